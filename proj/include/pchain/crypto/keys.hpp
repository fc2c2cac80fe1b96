#pragma once

#include <array>
#include <optional>
#include <span>

#include <pchain/common/bytes.hpp>
#include <pchain/crypto/address.hpp>

namespace pchain::crypto {

using Seed = std::array<std::uint8_t, 32>;
using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

/// Ed25519 key pair. private_key is the 32-byte seed the signing key is
/// expanded from.
struct KeyPair {
    Seed private_key{};
    PublicKey public_key{};
};

/// Deterministic for a given seed; seeded from the OS CSPRNG otherwise.
KeyPair generate_keypair(std::optional<Seed> seed = std::nullopt);
/// Throws Error(SeedInvalid) unless the span holds exactly 32 bytes.
KeyPair keypair_from_seed(std::span<const std::uint8_t> seed);

/// Throws Error(KeyInvalid) on a length other than 32.
Address derive_address(std::span<const std::uint8_t> public_key);

Signature sign(const KeyPair& key, std::span<const std::uint8_t> message);
bool verify(const PublicKey& public_key, std::span<const std::uint8_t> message, const Signature& signature);

}  // namespace pchain::crypto
