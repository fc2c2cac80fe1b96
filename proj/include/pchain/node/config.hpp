#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <pchain/common/amount.hpp>
#include <pchain/crypto/keys.hpp>

namespace pchain::node {

struct NodeConfig {
    std::string host = "127.0.0.1";
    int port = 8545;
    // Empty keeps the chain in memory only.
    std::filesystem::path block_log;
    crypto::Seed producer_seed{};
    Wei gas_price_wei = kWeiPerGwei;
    // USD per ETH scaled by 10^6.
    Wei eth_usd_rate_micro = 3'106'720'000;
    // 0 produces only on POST /v1/blocks/produce.
    std::uint64_t block_interval_seconds = 0;
    bool faucet_enabled = true;
};

/// Flat `key = value` lines; `#` starts a comment. Keys: listen, block_log,
/// producer_seed, gas_price_wei, eth_usd_rate, block_interval_seconds,
/// faucet_enabled. Throws Error(ConfigInvalid).
NodeConfig parse_config(std::string_view text, NodeConfig base = {});

/// "host:port" or a bare port.
void apply_listen(NodeConfig& config, std::string_view listen);

/// Defaults, then the file named by PCHAIN_CONFIG, then PCHAIN_LISTEN.
NodeConfig config_from_environment();

}  // namespace pchain::node
