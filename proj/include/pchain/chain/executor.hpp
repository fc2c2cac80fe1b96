#pragma once

#include <optional>

#include <pchain/chain/params.hpp>
#include <pchain/chain/transaction.hpp>
#include <pchain/vm/receipt.hpp>
#include <pchain/vm/state.hpp>

namespace pchain::chain {

/// Gas fee plus the value that leaves the sender's balance. Mint value is
/// created, not spent, so it is excluded. nullopt on overflow.
std::optional<Wei> max_cost(const Transaction& tx, const vm::GasSchedule& gas);

/// Executes one transaction: checks the nonce and that the sender covers
/// max_cost, charges the scheduled fee to the producer, bumps the nonce and
/// runs the contract call. A failing call still pays its fee.
///
/// Returns nullopt (state untouched) when the transaction cannot be
/// included at all: wrong nonce or unaffordable.
std::optional<vm::ExecutionReceipt> execute_transaction(vm::WorldState& state, const SignedTransaction& stx,
                                                        const ChainParams& params);

}  // namespace pchain::chain
