#include <pchain/node/cost_report.hpp>

#include <array>

namespace pchain::node {

namespace {

constexpr Wei kWeiPerMicroEth = 1'000'000'000'000;

struct Line {
    const char* description;
    std::uint64_t vm::GasSchedule::*gas;
    std::uint64_t reference_micro_eth;
};

constexpr std::array<Line, 6> kLines{{
    {"Deploy Contract", &vm::GasSchedule::deploy_system, 1333},
    {"Adding New Company", &vm::GasSchedule::add_company, 1069},
    {"Seller Registration", &vm::GasSchedule::seller_registration, 46},
    {"Product Enrollment", &vm::GasSchedule::product_enrollment, 209},
    {"Buying Product", &vm::GasSchedule::buy_product, 42},
    {"Product Distribution", &vm::GasSchedule::product_distribution, 56},
}};

}  // namespace

std::string usd_string(Wei wei, Wei eth_usd_rate_micro)
{
    return format_fixed(wei * eth_usd_rate_micro, 24, 2);
}

CostReport build_cost_report(const vm::GasSchedule& gas, Wei eth_usd_rate_micro)
{
    CostReport report;
    report.gas_price_wei = gas.gas_price_wei;
    report.eth_usd_rate_micro = eth_usd_rate_micro;

    auto& t = report.totals;
    int index = 1;
    for (const auto& line : kLines) {
        CostRow row;
        row.index = index++;
        row.description = line.description;
        row.gas = gas.*line.gas;
        row.fee_wei = gas.fee_for_gas(row.gas);
        row.fee_eth = format_eth(row.fee_wei);
        row.fee_usd = usd_string(row.fee_wei, eth_usd_rate_micro);
        row.reference_fee_wei = Wei(line.reference_micro_eth) * kWeiPerMicroEth;
        row.reference_fee_eth = format_eth(row.reference_fee_wei);
        row.reference_fee_usd = usd_string(row.reference_fee_wei, eth_usd_rate_micro);
        // The other reference rows all imply a 1 gwei gas price.
        const auto at_one_gwei = format_eth(Wei(row.gas) * kWeiPerGwei);
        if (at_one_gwei != row.reference_fee_eth) {
            row.annotation = "reference fee " + row.reference_fee_eth + " ETH does not equal " +
                             std::to_string(row.gas) + " gas at 1 gwei (" + at_one_gwei + " ETH)";
        }
        t.gas += row.gas;
        t.fee_wei += row.fee_wei;
        t.reference_fee_wei += row.reference_fee_wei;
        report.rows.push_back(std::move(row));
    }
    t.fee_eth = format_eth(t.fee_wei);
    t.fee_usd = usd_string(t.fee_wei, eth_usd_rate_micro);
    t.reference_fee_eth = format_eth(t.reference_fee_wei);
    t.reference_fee_usd = usd_string(t.reference_fee_wei, eth_usd_rate_micro);
    return report;
}

}  // namespace pchain::node
