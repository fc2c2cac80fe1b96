#pragma once

#include <optional>
#include <string>
#include <vector>

#include <pchain/cli/client.hpp>

namespace pchain::cli {

struct ScenarioStep {
    std::string description;
    std::string action;
    std::uint64_t gas = 0;
    Wei fee_wei = 0;
    bool success = false;
    std::string error;
};

struct ScenarioResult {
    std::string manufacturer;
    std::string seller;
    std::string company;
    std::uint64_t product_id = 0;
    // Deploy pseudo-receipt first, then one entry per lifecycle call.
    std::vector<ScenarioStep> steps;
    std::string pre_ship_payload;
    json pre_ship_verdict;
    std::string payload;
    json verdict;
    json product;
    std::string state_root;
    Wei eth_usd_rate_micro = 0;

    bool genuine() const;
    /// Every step succeeded, the product is Shipped/Complete, the final
    /// payload is Genuine and the pre-ship payload is NotYetShipped.
    bool passed() const;
};

struct ScenarioOptions {
    // Derives the two account keys; random keys when unset.
    std::optional<std::uint64_t> seed;
    Wei funding_wei = kWeiPerEth;
    Wei min_fee_wei = 1'000'000'000'000'000;
    Wei price_wei = 10'000'000'000'000'000;
    std::uint64_t stock = 10;
};

/// faucet, create company, enroll, register at exactly the minimum fee,
/// buy with exact value, ship, issue and verify the QR payload. Throws
/// TransportError; call failures are recorded in the steps.
ScenarioResult run_lifecycle(NodeClient& client, const ScenarioOptions& options = {});

json scenario_to_json(const ScenarioResult& r);

}  // namespace pchain::cli
