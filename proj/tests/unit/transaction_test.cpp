#include <gtest/gtest.h>

#include <random>

#include <pchain/chain/transaction.hpp>
#include <pchain/common/errors.hpp>

#include "golden_vectors.hpp"
#include "support/harness.hpp"

using namespace pchain;
using namespace pchain::chain;

namespace {

std::string random_string(std::mt19937_64& rng, std::size_t max_len)
{
    std::string s(rng() % (max_len + 1), ' ');
    for (auto& c : s) c = static_cast<char>('a' + rng() % 26);
    return s;
}

Address random_address(std::mt19937_64& rng)
{
    Address::Storage s{};
    for (auto& b : s) b = static_cast<std::uint8_t>(rng());
    return Address(s);
}

Wei random_wei(std::mt19937_64& rng)
{
    return (static_cast<Wei>(rng()) << 64) | rng();
}

Transaction random_transaction(std::mt19937_64& rng)
{
    Transaction tx;
    tx.sender = random_address(rng);
    tx.nonce = rng();
    tx.value_wei = random_wei(rng);
    switch (rng() % 7) {
    case 0: tx.action = CreateCompany{random_string(rng, 64), random_wei(rng)}; break;
    case 1: tx.action = EnrollProduct{random_address(rng), random_string(rng, 64), random_wei(rng), rng()}; break;
    case 2: tx.action = RegisterSeller{random_address(rng)}; break;
    case 3: tx.action = BuyProduct{random_address(rng), rng(), random_string(rng, 256), rng()}; break;
    case 4: tx.action = DistributeProduct{random_address(rng), rng()}; break;
    case 5: tx.action = Transfer{random_address(rng)}; break;
    default: tx.action = Mint{random_address(rng)}; break;
    }
    return tx;
}

Transaction golden_register_seller()
{
    const auto key = test::key_from_byte(1);
    Transaction tx;
    tx.sender = test::address_of(key);
    tx.nonce = 7;
    tx.action = RegisterSeller{test::address_from_byte(0x11)};
    tx.value_wei = 1'000'000;
    return tx;
}

}  // namespace

TEST(CanonicalSerialize, RegisterSellerMatchesReferenceSerializer)
{
    const auto tx = golden_register_seller();
    EXPECT_EQ(to_hex(canonical_serialize(tx)), golden::kRegisterSellerBytes);
    EXPECT_EQ(to_hex(transaction_hash(tx)), golden::kRegisterSellerHash);

    const auto stx = sign_transaction(tx, test::key_from_byte(1));
    EXPECT_EQ(to_hex(stx.signature), golden::kRegisterSellerSignature);
    EXPECT_EQ(to_hex(stx.tx_hash), golden::kRegisterSellerHash);
}

TEST(CanonicalSerialize, RoundTripIsAFixedPoint)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const auto tx = random_transaction(rng);
        const auto bytes = canonical_serialize(tx);
        const auto back = deserialize_transaction(bytes);
        EXPECT_EQ(back, tx);
        EXPECT_EQ(canonical_serialize(back), bytes);
    }
}

TEST(CanonicalSerialize, NonceIsCommitted)
{
    auto a = golden_register_seller();
    auto b = a;
    b.nonce += 1;
    EXPECT_NE(canonical_serialize(a), canonical_serialize(b));
}

TEST(CanonicalSerialize, StringLimitIs256Bytes)
{
    Transaction tx = golden_register_seller();
    tx.action = CreateCompany{std::string(256, 'x'), 0};
    EXPECT_NO_THROW(canonical_serialize(tx));
    tx.action = CreateCompany{std::string(257, 'x'), 0};
    try {
        canonical_serialize(tx);
        FAIL() << "expected FieldTooLong";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::FieldTooLong);
    }
}

TEST(CanonicalSerialize, RejectsTrailingBytesAndUnknownTags)
{
    auto bytes = canonical_serialize(golden_register_seller());
    auto extended = bytes;
    extended.push_back(0);
    EXPECT_THROW(deserialize_transaction(extended), Error);
    auto bad_tag = bytes;
    bad_tag[28] = 0x42;
    EXPECT_THROW(deserialize_transaction(bad_tag), Error);
    bytes.pop_back();
    EXPECT_THROW(deserialize_transaction(bytes), Error);
}

TEST(SignTransaction, SignThenVerify)
{
    const auto stx = sign_transaction(golden_register_seller(), test::key_from_byte(1));
    EXPECT_TRUE(verify_signature(stx));
}

TEST(SignTransaction, SenderMustOwnTheKey)
{
    try {
        sign_transaction(golden_register_seller(), test::key_from_byte(2));
        FAIL() << "expected SenderKeyMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SenderKeyMismatch);
    }
}

TEST(SignTransaction, AnySingleByteMutationFailsVerification)
{
    const auto stx = sign_transaction(golden_register_seller(), test::key_from_byte(1));
    ByteWriter w;
    write_envelope(w, stx);
    const auto envelope = w.bytes();

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        auto mutated = envelope;
        const auto pos = 4 + rng() % (mutated.size() - 4);  // skip the length frame
        mutated[pos] ^= static_cast<std::uint8_t>(1 + rng() % 255);
        try {
            ByteReader r(mutated);
            const auto parsed = read_envelope(r);
            EXPECT_FALSE(verify_signature(parsed)) << "mutation at byte " << pos;
        } catch (const Error&) {
            // unparseable counts as rejected
        }
    }
}

TEST(Envelope, RoundTrip)
{
    const auto stx = sign_transaction(golden_register_seller(), test::key_from_byte(1));
    ByteWriter w;
    write_envelope(w, stx);
    ByteReader r(w.bytes());
    EXPECT_EQ(read_envelope(r), stx);
    EXPECT_TRUE(r.done());
}
