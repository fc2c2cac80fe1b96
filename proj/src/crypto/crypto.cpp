#include <pchain/crypto/hash.hpp>
#include <pchain/crypto/keys.hpp>

#include <mutex>

#include <sodium.h>

#include <pchain/common/errors.hpp>

namespace pchain {

namespace {

void ensure_sodium()
{
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
    });
}

}  // namespace

std::optional<Address> Address::from_text(std::string_view text)
{
    if (text.size() != 2 + 2 * kSize || !(text.starts_with("0x") || text.starts_with("0X"))) return std::nullopt;
    auto bytes = fixed_from_hex<kSize>(text);
    if (!bytes) return std::nullopt;
    return Address(*bytes);
}

std::string Address::to_text() const
{
    return to_hex_prefixed(bytes_);
}

bool Address::is_zero() const
{
    for (auto b : bytes_) {
        if (b != 0) return false;
    }
    return true;
}

namespace crypto {

Hash256 sha256(std::span<const std::uint8_t> data)
{
    Hash256 out{};
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

KeyPair generate_keypair(std::optional<Seed> seed)
{
    ensure_sodium();
    if (!seed) {
        seed.emplace();
        randombytes_buf(seed->data(), seed->size());
    }
    KeyPair kp;
    kp.private_key = *seed;
    std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> sk{};
    crypto_sign_seed_keypair(kp.public_key.data(), sk.data(), seed->data());
    sodium_memzero(sk.data(), sk.size());
    return kp;
}

KeyPair keypair_from_seed(std::span<const std::uint8_t> seed)
{
    if (seed.size() != crypto_sign_SEEDBYTES) {
        throw Error(Errc::SeedInvalid, "seed must be 32 bytes, got " + std::to_string(seed.size()));
    }
    Seed s{};
    std::copy(seed.begin(), seed.end(), s.begin());
    return generate_keypair(s);
}

Address derive_address(std::span<const std::uint8_t> public_key)
{
    if (public_key.size() != crypto_sign_PUBLICKEYBYTES) {
        throw Error(Errc::KeyInvalid, "public key must be 32 bytes, got " + std::to_string(public_key.size()));
    }
    const auto digest = sha256(public_key);
    Address::Storage bytes{};
    std::copy_n(digest.begin(), Address::kSize, bytes.begin());
    return Address(bytes);
}

Signature sign(const KeyPair& key, std::span<const std::uint8_t> message)
{
    ensure_sodium();
    std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> sk{};
    std::array<std::uint8_t, crypto_sign_PUBLICKEYBYTES> pk{};
    crypto_sign_seed_keypair(pk.data(), sk.data(), key.private_key.data());
    Signature sig{};
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), sk.data());
    sodium_memzero(sk.data(), sk.size());
    return sig;
}

bool verify(const PublicKey& public_key, std::span<const std::uint8_t> message, const Signature& signature)
{
    ensure_sodium();
    return crypto_sign_verify_detached(signature.data(), message.data(), message.size(), public_key.data()) == 0;
}

}  // namespace crypto
}  // namespace pchain
