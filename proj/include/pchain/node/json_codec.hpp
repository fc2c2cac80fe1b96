#pragma once

#include <json.hpp>

#include <pchain/chain/block.hpp>
#include <pchain/chain/chain_store.hpp>
#include <pchain/node/cost_report.hpp>
#include <pchain/qr/payload.hpp>
#include <pchain/vm/gas.hpp>
#include <pchain/vm/receipt.hpp>
#include <pchain/vm/state.hpp>

namespace pchain::node {

using nlohmann::json;

// Binary fields are 0x-prefixed lowercase hex, wei amounts are decimal
// strings, counters and ids are JSON numbers. Decoders throw
// Error(Malformed) naming the offending field.

json action_to_json(const chain::Action& action);
chain::Action action_from_json(const json& j);

json transaction_to_json(const chain::SignedTransaction& stx);
/// tx_hash is recomputed; a supplied tx_hash must agree.
chain::SignedTransaction transaction_from_json(const json& j);

json receipt_to_json(const vm::ExecutionReceipt& r);
vm::ExecutionReceipt receipt_from_json(const json& j);

json block_to_json(const chain::Block& block);
json head_to_json(const chain::Block& tip);

json product_to_json(const Address& company, const vm::Product& p);
json company_summary_to_json(const vm::CompanySummary& c);
json company_to_json(const vm::Company& c);

json payload_to_json(const qr::QRPayload& p);
json verdict_to_json(const qr::Verdict& v);

json validation_to_json(const chain::ValidationResult& v);
json cost_report_to_json(const CostReport& report);
json gas_schedule_to_json(const vm::GasSchedule& gas);

json error_json(std::string_view code, std::string_view message = {});

// Field accessors shared with the CLI.
std::string get_string(const json& j, const char* key);
std::uint64_t get_u64(const json& j, const char* key);
Wei get_wei(const json& j, const char* key);
Address get_address(const json& j, const char* key);
Hash256 get_hash(const json& j, const char* key);

}  // namespace pchain::node
