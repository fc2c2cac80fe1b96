#pragma once

#include <cstdint>

#include <pchain/crypto/address.hpp>
#include <pchain/vm/gas.hpp>

namespace pchain::chain {

/// Everything a node must agree on to re-execute the chain.
struct ChainParams {
    vm::GasSchedule gas;
    // Receives every gas fee and is the only sender allowed to Mint.
    Address producer;
    std::uint64_t genesis_timestamp = 0;

    bool operator==(const ChainParams&) const = default;
};

}  // namespace pchain::chain
