#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pchain/common/amount.hpp>
#include <pchain/vm/gas.hpp>

namespace pchain::node {

struct CostRow {
    int index = 0;
    std::string description;
    std::uint64_t gas = 0;
    Wei fee_wei = 0;
    std::string fee_eth;
    std::string fee_usd;
    // Published per-operation fee of the reference deployment.
    Wei reference_fee_wei = 0;
    std::string reference_fee_eth;
    std::string reference_fee_usd;
    std::optional<std::string> annotation;
};

struct CostTotals {
    std::uint64_t gas = 0;
    Wei fee_wei = 0;
    std::string fee_eth;
    std::string fee_usd;
    Wei reference_fee_wei = 0;
    std::string reference_fee_eth;
    std::string reference_fee_usd;
};

/// Fee table for the six contract operations. Totals are sums of the exact
/// column values, rounded once.
struct CostReport {
    Wei gas_price_wei = 0;
    Wei eth_usd_rate_micro = 0;
    std::vector<CostRow> rows;
    CostTotals totals;
};

/// USD value of `wei` at a rate scaled by 10^6, rounded to cents.
std::string usd_string(Wei wei, Wei eth_usd_rate_micro);

CostReport build_cost_report(const vm::GasSchedule& gas, Wei eth_usd_rate_micro);

}  // namespace pchain::node
