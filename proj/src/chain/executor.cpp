#include <pchain/chain/executor.hpp>

#include <pchain/vm/contract.hpp>

namespace pchain::chain {

std::optional<Wei> max_cost(const Transaction& tx, const vm::GasSchedule& gas)
{
    const auto tag = tag_of(tx.action);
    const auto fee = checked_mul(static_cast<Wei>(gas.gas_for(tag)), gas.gas_price_wei);
    if (!fee) return std::nullopt;
    if (tag == ActionTag::Mint) return fee;
    return checked_add(*fee, tx.value_wei);
}

std::optional<vm::ExecutionReceipt> execute_transaction(vm::WorldState& state, const SignedTransaction& stx,
                                                        const ChainParams& params)
{
    const Transaction& tx = stx.tx;
    if (tx.nonce != state.nonce_of(tx.sender)) return std::nullopt;
    if (tx.nonce == UINT64_MAX) return std::nullopt;

    const auto tag = tag_of(tx.action);
    const auto cost = max_cost(tx, params.gas);
    if (!cost || state.balance_of(tx.sender) < *cost) return std::nullopt;
    const std::uint64_t gas = params.gas.gas_for(tag);
    const Wei fee = params.gas.fee_for_gas(gas);
    if (tx.sender != params.producer && !checked_add(state.balance_of(params.producer), fee)) return std::nullopt;

    if (fee != 0 && tx.sender != params.producer) {
        const Wei remaining = state.balance_of(tx.sender) - fee;
        if (remaining == 0) {
            state.balances.erase(tx.sender);
        } else {
            state.balances[tx.sender] = remaining;
        }
        state.balances[params.producer] += fee;
    }
    state.nonces[tx.sender] = tx.nonce + 1;

    const vm::CallContext ctx{tx.sender, tx.nonce, tx.value_wei};
    const auto outcome = vm::apply_action(state, ctx, tx.action, params.producer);

    vm::ExecutionReceipt r;
    r.tx_hash = stx.tx_hash;
    r.success = outcome.ok();
    r.gas_used = gas;
    r.fee_wei = fee;
    r.error = outcome.error;
    r.company = outcome.company;
    r.product_id = outcome.product_id;
    return r;
}

}  // namespace pchain::chain
