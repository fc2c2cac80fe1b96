#include <gtest/gtest.h>

#include <random>
#include <set>

#include <pchain/common/errors.hpp>
#include <pchain/crypto/hash.hpp>
#include <pchain/crypto/keys.hpp>

#include "golden_vectors.hpp"

using namespace pchain;

namespace {

crypto::Seed filled(std::uint8_t b)
{
    crypto::Seed s{};
    s.fill(b);
    return s;
}

}  // namespace

TEST(KeyPair, FixedSeedIsDeterministic)
{
    const auto a = crypto::generate_keypair(filled(0));
    const auto b = crypto::generate_keypair(filled(0));
    EXPECT_EQ(a.public_key, b.public_key);
    EXPECT_EQ(to_hex(a.public_key), golden::kPubkeySeedZero);
}

TEST(KeyPair, RandomSeedsDiffer)
{
    const auto a = crypto::generate_keypair();
    const auto b = crypto::generate_keypair();
    EXPECT_NE(a.public_key, b.public_key);
    EXPECT_NE(a.private_key, b.private_key);
}

TEST(KeyPair, SeedOneMatchesReferenceAddress)
{
    const auto kp = crypto::generate_keypair(filled(1));
    EXPECT_EQ(to_hex(kp.public_key), golden::kPubkeySeedOne);
    EXPECT_EQ(crypto::derive_address(kp.public_key).to_text(), golden::kAddressSeedOne);
}

TEST(KeyPair, SeedLengthIsChecked)
{
    const Bytes short_seed(31, 0);
    try {
        crypto::keypair_from_seed(short_seed);
        FAIL() << "expected SeedInvalid";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SeedInvalid);
    }
    EXPECT_NO_THROW(crypto::keypair_from_seed(Bytes(32, 7)));
}

TEST(KeyPair, SignaturesVerifyOnlyUnderTheirKey)
{
    const auto kp = crypto::generate_keypair(filled(3));
    const auto other = crypto::generate_keypair(filled(4));
    const Bytes msg{1, 2, 3, 4};
    const auto sig = crypto::sign(kp, msg);
    EXPECT_TRUE(crypto::verify(kp.public_key, msg, sig));
    EXPECT_FALSE(crypto::verify(other.public_key, msg, sig));
    EXPECT_FALSE(crypto::verify(kp.public_key, Bytes{1, 2, 3, 5}, sig));
}

TEST(Address, ZeroKeyMatchesReferenceDigest)
{
    const Bytes zero_key(32, 0);
    EXPECT_EQ(crypto::derive_address(zero_key).to_text(), golden::kAddressZeroKey);
    EXPECT_EQ(crypto::derive_address(zero_key), crypto::derive_address(zero_key));
}

TEST(Address, WrongKeyLengthIsRejected)
{
    try {
        crypto::derive_address(Bytes(33, 0));
        FAIL() << "expected KeyInvalid";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::KeyInvalid);
    }
}

TEST(Address, SingleBitFlipsGiveDistinctAddresses)
{
    std::mt19937_64 rng(11);
    std::set<Address> seen;
    for (int i = 0; i < 1000; ++i) {
        crypto::Seed seed{};
        for (auto& b : seed) b = static_cast<std::uint8_t>(rng());
        auto pk = crypto::generate_keypair(seed).public_key;
        const auto base = crypto::derive_address(pk);
        const auto bit = rng() % 256;
        pk[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        EXPECT_NE(crypto::derive_address(pk), base);
        seen.insert(base);
    }
    EXPECT_EQ(seen.size(), 1000u);
}

TEST(Address, TextRoundTrip)
{
    const auto a = crypto::derive_address(crypto::generate_keypair(filled(9)).public_key);
    const auto text = a.to_text();
    ASSERT_EQ(text.size(), 42u);
    EXPECT_EQ(text.substr(0, 2), "0x");
    EXPECT_EQ(Address::from_text(text), a);
    EXPECT_FALSE(Address::from_text(text.substr(1)).has_value());
    EXPECT_FALSE(Address::from_text("0x" + std::string(40, 'g')).has_value());
    EXPECT_FALSE(Address::from_text(text + "00").has_value());
}

TEST(Sha256, KnownVector)
{
    const std::string abc = "abc";
    const auto h = crypto::sha256(std::span(reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()));
    EXPECT_EQ(to_hex(h), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
