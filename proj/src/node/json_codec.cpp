#include <pchain/node/json_codec.hpp>

#include <limits>

namespace pchain::node {

namespace {

[[noreturn]] void malformed(const char* key, const char* what)
{
    throw Error(Errc::Malformed, std::string(key) + ": " + what);
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object()) throw Error(Errc::Malformed, "expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) malformed(key, "missing");
    return *it;
}

template <std::size_t N>
std::array<std::uint8_t, N> get_fixed(const json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_string()) malformed(key, "expected a hex string");
    const auto s = v.get<std::string>();
    if (!s.starts_with("0x")) malformed(key, "expected 0x prefix");
    const auto bytes = fixed_from_hex<N>(s);
    if (!bytes) malformed(key, "wrong length or not hex");
    return *bytes;
}

json opt_address(const std::optional<Address>& a)
{
    return a ? json(a->to_text()) : json(nullptr);
}

}  // namespace

std::string get_string(const json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_string()) malformed(key, "expected a string");
    return v.get<std::string>();
}

std::uint64_t get_u64(const json& j, const char* key)
{
    const auto& v = field(j, key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_string()) {
        const auto w = parse_wei(v.get<std::string>());
        if (w && *w <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(*w);
    }
    malformed(key, "expected a non-negative 64-bit integer");
}

Wei get_wei(const json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_string()) malformed(key, "expected a decimal string");
    const auto w = parse_wei(v.get<std::string>());
    if (!w) malformed(key, "not a decimal amount");
    return *w;
}

Address get_address(const json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_string()) malformed(key, "expected an address string");
    const auto a = Address::from_text(v.get<std::string>());
    if (!a) malformed(key, "not a 0x-prefixed 20-byte address");
    return *a;
}

Hash256 get_hash(const json& j, const char* key)
{
    return get_fixed<32>(j, key);
}

json action_to_json(const chain::Action& action)
{
    json j;
    j["type"] = std::string(chain::action_name(chain::tag_of(action)));
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, chain::CreateCompany>) {
                j["name"] = a.name;
                j["min_fee_wei"] = wei_to_string(a.min_fee_wei);
            } else if constexpr (std::is_same_v<T, chain::EnrollProduct>) {
                j["company"] = a.company.to_text();
                j["name"] = a.name;
                j["price_wei"] = wei_to_string(a.price_wei);
                j["stock"] = a.stock;
            } else if constexpr (std::is_same_v<T, chain::RegisterSeller>) {
                j["company"] = a.company.to_text();
            } else if constexpr (std::is_same_v<T, chain::BuyProduct>) {
                j["company"] = a.company.to_text();
                j["product_id"] = a.product_id;
                j["seller_name"] = a.seller_name;
                j["quantity"] = a.quantity;
            } else if constexpr (std::is_same_v<T, chain::DistributeProduct>) {
                j["company"] = a.company.to_text();
                j["product_id"] = a.product_id;
            } else {
                j["to"] = a.to.to_text();
            }
        },
        action);
    return j;
}

chain::Action action_from_json(const json& j)
{
    const auto type = get_string(j, "type");
    if (type == "CreateCompany") return chain::CreateCompany{get_string(j, "name"), get_wei(j, "min_fee_wei")};
    if (type == "EnrollProduct") {
        return chain::EnrollProduct{get_address(j, "company"), get_string(j, "name"), get_wei(j, "price_wei"),
                                    get_u64(j, "stock")};
    }
    if (type == "RegisterSeller") return chain::RegisterSeller{get_address(j, "company")};
    if (type == "BuyProduct") {
        return chain::BuyProduct{get_address(j, "company"), get_u64(j, "product_id"), get_string(j, "seller_name"),
                                 get_u64(j, "quantity")};
    }
    if (type == "DistributeProduct") return chain::DistributeProduct{get_address(j, "company"), get_u64(j, "product_id")};
    if (type == "Transfer") return chain::Transfer{get_address(j, "to")};
    if (type == "Mint") return chain::Mint{get_address(j, "to")};
    malformed("type", "unknown action type");
}

json transaction_to_json(const chain::SignedTransaction& stx)
{
    return json{
        {"tx_hash", to_hex_prefixed(stx.tx_hash)},
        {"sender", stx.tx.sender.to_text()},
        {"nonce", stx.tx.nonce},
        {"action", action_to_json(stx.tx.action)},
        {"value_wei", wei_to_string(stx.tx.value_wei)},
        {"public_key", to_hex_prefixed(stx.public_key)},
        {"signature", to_hex_prefixed(stx.signature)},
    };
}

chain::SignedTransaction transaction_from_json(const json& j)
{
    chain::SignedTransaction stx;
    stx.tx.sender = get_address(j, "sender");
    stx.tx.nonce = get_u64(j, "nonce");
    stx.tx.action = action_from_json(field(j, "action"));
    stx.tx.value_wei = get_wei(j, "value_wei");
    stx.public_key = get_fixed<32>(j, "public_key");
    stx.signature = get_fixed<64>(j, "signature");
    // Enforces the string length limits.
    stx.tx_hash = chain::transaction_hash(stx.tx);
    if (j.contains("tx_hash") && get_hash(j, "tx_hash") != stx.tx_hash) malformed("tx_hash", "does not match the transaction");
    return stx;
}

json receipt_to_json(const vm::ExecutionReceipt& r)
{
    return json{
        {"tx_hash", to_hex_prefixed(r.tx_hash)},
        {"success", r.success},
        {"gas_used", r.gas_used},
        {"fee_wei", wei_to_string(r.fee_wei)},
        {"fee_eth", format_eth(r.fee_wei)},
        {"error", r.success ? json(nullptr) : json(std::string(to_string(r.error)))},
        {"company", opt_address(r.company)},
        {"product_id", r.product_id ? json(*r.product_id) : json(nullptr)},
    };
}

vm::ExecutionReceipt receipt_from_json(const json& j)
{
    vm::ExecutionReceipt r;
    r.tx_hash = get_hash(j, "tx_hash");
    const auto& success = field(j, "success");
    if (!success.is_boolean()) malformed("success", "expected a boolean");
    r.success = success.get<bool>();
    r.gas_used = get_u64(j, "gas_used");
    r.fee_wei = get_wei(j, "fee_wei");
    if (const auto& e = field(j, "error"); !e.is_null()) {
        const auto code = e.is_string() ? errc_from_string(e.get<std::string>()) : std::nullopt;
        if (!code) malformed("error", "unknown error code");
        r.error = *code;
    }
    if (!field(j, "company").is_null()) r.company = get_address(j, "company");
    if (!field(j, "product_id").is_null()) r.product_id = get_u64(j, "product_id");
    return r;
}

json block_to_json(const chain::Block& block)
{
    json txs = json::array();
    for (const auto& stx : block.transactions) txs.push_back(transaction_to_json(stx));
    json receipts = json::array();
    for (const auto& r : block.receipts) receipts.push_back(receipt_to_json(r));
    return json{
        {"height", block.height},
        {"block_hash", to_hex_prefixed(block.block_hash)},
        {"prev_hash", to_hex_prefixed(block.prev_hash)},
        {"timestamp", block.timestamp},
        {"state_root", to_hex_prefixed(block.state_root)},
        {"transactions_hash", to_hex_prefixed(chain::transactions_hash(block.transactions))},
        {"transactions", std::move(txs)},
        {"receipts", std::move(receipts)},
    };
}

json head_to_json(const chain::Block& tip)
{
    return json{
        {"height", tip.height},
        {"block_hash", to_hex_prefixed(tip.block_hash)},
        {"state_root", to_hex_prefixed(tip.state_root)},
        {"timestamp", tip.timestamp},
    };
}

json product_to_json(const Address& company, const vm::Product& p)
{
    return json{
        {"company", company.to_text()},
        {"id", p.id},
        {"name", p.name},
        {"price_wei", wei_to_string(p.price_wei)},
        {"stock", p.stock},
        {"status", std::string(vm::to_string(p.status))},
        {"order_status", std::string(vm::to_string(p.order_status))},
        {"owner_name", p.owner_name},
        {"owner_address", p.owner_address.to_text()},
    };
}

json company_summary_to_json(const vm::CompanySummary& c)
{
    return json{
        {"address", c.contract_address.to_text()},
        {"name", c.name},
        {"manufacturer", c.manufacturer.to_text()},
        {"min_registration_fee_wei", wei_to_string(c.min_registration_fee_wei)},
        {"seller_count", c.seller_count},
        {"product_count", c.product_count},
    };
}

json company_to_json(const vm::Company& c)
{
    json j = company_summary_to_json(vm::CompanySummary{c.contract_address, c.name, c.manufacturer,
                                                        c.min_registration_fee_wei, c.sellers.size(),
                                                        c.products.size()});
    json sellers = json::array();
    for (const auto& s : c.sellers) sellers.push_back(s.to_text());
    json products = json::array();
    for (const auto& p : c.products) products.push_back(product_to_json(c.contract_address, p));
    j["sellers"] = std::move(sellers);
    j["products"] = std::move(products);
    return j;
}

json payload_to_json(const qr::QRPayload& p)
{
    return json{
        {"version", p.version},
        {"company", p.company.to_text()},
        {"product_id", p.product_id},
        {"manufacturer", p.manufacturer.to_text()},
        {"owner_address", p.owner_address.to_text()},
        {"owner_name", p.owner_name},
        {"status", std::string(vm::to_string(p.status))},
        {"order_status", std::string(vm::to_string(p.order_status))},
        {"issued_at_height", p.issued_at_height},
        {"checksum", to_hex_prefixed(p.checksum)},
    };
}

json verdict_to_json(const qr::Verdict& v)
{
    return json{
        {"verdict", std::string(qr::to_string(v.kind))},
        {"mismatched_fields", v.fields},
        {"reason", v.reason == qr::UnknownReason::None ? json(nullptr) : json(std::string(qr::to_string(v.reason)))},
    };
}

json validation_to_json(const chain::ValidationResult& v)
{
    if (v.ok()) return json{{"valid", true}, {"failure", nullptr}, {"height", nullptr}, {"detail", nullptr}};
    return json{{"valid", false},
                {"failure", std::string(chain::to_string(v.failure))},
                {"height", v.height},
                {"detail", v.detail}};
}

json cost_report_to_json(const CostReport& report)
{
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back(json{
            {"index", r.index},
            {"description", r.description},
            {"gas", r.gas},
            {"fee_wei", wei_to_string(r.fee_wei)},
            {"fee_eth", r.fee_eth},
            {"fee_usd", r.fee_usd},
            {"reference_fee_eth", r.reference_fee_eth},
            {"reference_fee_usd", r.reference_fee_usd},
            {"annotation", r.annotation ? json(*r.annotation) : json(nullptr)},
        });
    }
    const auto& t = report.totals;
    return json{
        {"gas_price_wei", wei_to_string(report.gas_price_wei)},
        {"eth_usd_rate", format_fixed(report.eth_usd_rate_micro, 6, 2)},
        {"rows", std::move(rows)},
        {"totals",
         {{"gas", t.gas},
          {"fee_wei", wei_to_string(t.fee_wei)},
          {"fee_eth", t.fee_eth},
          {"fee_usd", t.fee_usd},
          {"reference_fee_eth", t.reference_fee_eth},
          {"reference_fee_usd", t.reference_fee_usd}}},
    };
}

json gas_schedule_to_json(const vm::GasSchedule& gas)
{
    return json{
        {"gas_price_wei", wei_to_string(gas.gas_price_wei)},
        {"operations",
         {{"DeployContract", gas.deploy_system},
          {"CreateCompany", gas.add_company},
          {"RegisterSeller", gas.seller_registration},
          {"EnrollProduct", gas.product_enrollment},
          {"BuyProduct", gas.buy_product},
          {"DistributeProduct", gas.product_distribution},
          {"Transfer", gas.transfer},
          {"Mint", 0}}},
    };
}

json error_json(std::string_view code, std::string_view message)
{
    json j{{"error", std::string(code)}};
    if (!message.empty()) j["message"] = std::string(message);
    return j;
}

}  // namespace pchain::node
