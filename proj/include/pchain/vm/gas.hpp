#pragma once

#include <cstdint>

#include <pchain/chain/transaction.hpp>
#include <pchain/common/amount.hpp>

namespace pchain::vm {

/// Fixed per-operation gas. The six contract rows are the measured costs of
/// the reference deployment; transfer uses the Ethereum base cost and faucet
/// mints are free.
struct GasSchedule {
    std::uint64_t deploy_system = 133405;
    std::uint64_t add_company = 1068597;
    std::uint64_t seller_registration = 45755;
    std::uint64_t product_enrollment = 208571;
    std::uint64_t buy_product = 41581;
    std::uint64_t product_distribution = 55578;
    std::uint64_t transfer = 21000;
    Wei gas_price_wei = kWeiPerGwei;

    std::uint64_t gas_for(chain::ActionTag tag) const;
    Wei fee_for_gas(std::uint64_t gas) const { return static_cast<Wei>(gas) * gas_price_wei; }
    Wei fee_for(chain::ActionTag tag) const { return fee_for_gas(gas_for(tag)); }

    bool operator==(const GasSchedule&) const = default;
};

}  // namespace pchain::vm
