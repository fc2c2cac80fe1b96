#include <gtest/gtest.h>

#include <random>

#include <pchain/qr/image.hpp>
#include <pchain/qr/payload.hpp>
#include <pchain/qr/symbol.hpp>
#include <pchain/vm/contract.hpp>

#include "golden_vectors.hpp"
#include "support/harness.hpp"

using namespace pchain;
using namespace pchain::qr;

namespace {

QRPayload golden_payload()
{
    const Address owner = test::address_of(test::key_from_byte(1));
    QRPayload p;
    p.company = vm::contract_address_for(owner, 0);
    p.product_id = 0;
    p.manufacturer = owner;
    p.owner_address = test::address_from_byte(0x22);
    p.owner_name = "Shop";
    p.status = vm::ProductStatus::Shipped;
    p.order_status = vm::OrderStatus::Complete;
    p.issued_at_height = 5;
    seal(p);
    return p;
}

QRPayload random_payload(std::mt19937_64& rng)
{
    auto addr = [&] {
        Address::Storage s{};
        for (auto& b : s) b = static_cast<std::uint8_t>(rng());
        return Address(s);
    };
    QRPayload p;
    p.company = addr();
    p.product_id = rng();
    p.manufacturer = addr();
    p.owner_address = addr();
    p.owner_name.resize(rng() % 65);
    for (auto& c : p.owner_name) c = static_cast<char>(rng());
    p.status = static_cast<vm::ProductStatus>(rng() % 2);
    p.order_status = static_cast<vm::OrderStatus>(rng() % 3);
    p.issued_at_height = rng();
    seal(p);
    return p;
}

Errc decode_error(std::string_view text)
{
    try {
        decode_text(text);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::None;
}

// A shipped product plus a payload captured before the sale.
struct Lifecycle {
    test::Harness h;
    crypto::KeyPair mfr = test::key_from_byte(1);
    crypto::KeyPair seller = test::key_from_byte(2);
    Address company;
    QRPayload before_sale;
    QRPayload pending;

    Lifecycle()
    {
        h.fund(test::address_of(mfr), kWeiPerEth);
        h.fund(test::address_of(seller), kWeiPerEth);
        h.produce();
        company = *h.run(mfr, chain::CreateCompany{"Acme", 10}).company;
        h.run(mfr, chain::EnrollProduct{company, "Watch", 100, 5});
        before_sale = issue_payload(h.store(), company, 0);
        h.run(seller, chain::RegisterSeller{company}, 10);
        h.run(seller, chain::BuyProduct{company, 0, "Shop", 1}, 100);
        pending = issue_payload(h.store(), company, 0);
    }
    void ship() { h.run(mfr, chain::DistributeProduct{company, 0}); }
};

}  // namespace

TEST(Payload, GoldenText)
{
    const auto p = golden_payload();
    EXPECT_EQ(encode_text(p), golden::kQrPayloadText);
    EXPECT_EQ(decode_text(golden::kQrPayloadText), p);
}

TEST(Payload, RandomRoundTrips)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_payload(rng);
        const auto text = encode_text(p);
        ASSERT_TRUE(text.starts_with(kScheme));
        ASSERT_EQ(decode_text(text), p);
    }
}

TEST(Payload, MaximumSizeFitsInOneSymbol)
{
    std::mt19937_64 rng(6);
    auto p = random_payload(rng);
    p.owner_name = std::string(64, 'x');
    p.product_id = ~std::uint64_t(0);
    p.issued_at_height = ~std::uint64_t(0);
    seal(p);
    EXPECT_LE(encode_text(p).size(), 512u);
}

TEST(Payload, EverySubstitutionIsRejected)
{
    static constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
    const std::string text = golden::kQrPayloadText;
    int checked = 0;
    for (std::size_t i = kScheme.size(); i < text.size(); ++i) {
        for (char c : kAlphabet) {
            if (c == text[i]) continue;
            std::string mutated = text;
            mutated[i] = c;
            const auto err = decode_error(mutated);
            ASSERT_TRUE(err == Errc::ChecksumMismatch || err == Errc::BadBase64)
                << "position " << i << " char " << c << " gave " << to_string(err);
            ++checked;
        }
    }
    EXPECT_GT(checked, 5000);
}

TEST(Payload, PrefixAndVersionErrors)
{
    const std::string body = std::string(golden::kQrPayloadText).substr(kScheme.size());
    EXPECT_EQ(decode_error("pcv2:" + body), Errc::UnsupportedVersion);
    EXPECT_EQ(decode_error("pcv10:" + body), Errc::UnsupportedVersion);
    EXPECT_EQ(decode_error("pcvx:" + body), Errc::BadPrefix);
    EXPECT_EQ(decode_error("PCV1:" + body), Errc::BadPrefix);
    EXPECT_EQ(decode_error(""), Errc::BadPrefix);
    EXPECT_EQ(decode_error("pcv1:" + body + "="), Errc::BadBase64);
    EXPECT_EQ(decode_error("pcv1:AAAA"), Errc::Malformed);

    auto p = golden_payload();
    p.version = 2;
    seal(p);
    EXPECT_EQ(decode_error(encode_text(p)), Errc::UnsupportedVersion);

    p = golden_payload();
    p.owner_name = std::string(65, 'n');
    seal(p);
    EXPECT_EQ(decode_error(encode_text(p)), Errc::Malformed);

    p = golden_payload();
    p.status = static_cast<vm::ProductStatus>(3);
    seal(p);
    EXPECT_EQ(decode_error(encode_text(p)), Errc::Malformed);

    p = golden_payload();
    p.checksum[0] ^= 1;
    EXPECT_EQ(decode_error(encode_text(p)), Errc::ChecksumMismatch);
}

TEST(Verify, ShippedProductIsGenuine)
{
    Lifecycle l;
    l.ship();
    const auto p = issue_payload(l.h.store(), l.company, 0);
    EXPECT_EQ(p.issued_at_height, l.h.store().height());
    const auto v = verify(decode_text(encode_text(p)), l.h.store());
    EXPECT_EQ(v.kind, Verdict::Kind::Genuine);
    EXPECT_TRUE(v.fields.empty());
}

TEST(Verify, PendingProductIsNotYetShipped)
{
    Lifecycle l;
    const auto v = verify(l.pending, l.h.store());
    EXPECT_EQ(v.kind, Verdict::Kind::Unknown);
    EXPECT_EQ(v.reason, UnknownReason::NotYetShipped);
}

TEST(Verify, StalePayloadsMismatch)
{
    Lifecycle l;
    l.ship();
    const auto v = verify(l.before_sale, l.h.store());
    EXPECT_EQ(v.kind, Verdict::Kind::Mismatch);
    const std::vector<std::string> expected{"owner_address", "owner_name", "status", "order_status", "issued_at_height"};
    EXPECT_EQ(v.fields, expected);

    const auto w = verify(l.pending, l.h.store());
    EXPECT_EQ(w.kind, Verdict::Kind::Mismatch);
    const std::vector<std::string> expected_pending{"status", "order_status", "issued_at_height"};
    EXPECT_EQ(w.fields, expected_pending);
}

TEST(Verify, ForgedFieldsMismatch)
{
    Lifecycle l;
    l.ship();
    auto p = issue_payload(l.h.store(), l.company, 0);
    p.owner_name = "Counterfeit";
    p.manufacturer = test::address_from_byte(0x66);
    seal(p);
    const auto v = verify(p, l.h.store());
    EXPECT_EQ(v.kind, Verdict::Kind::Mismatch);
    const std::vector<std::string> expected{"manufacturer", "owner_name"};
    EXPECT_EQ(v.fields, expected);

    auto future = issue_payload(l.h.store(), l.company, 0);
    future.issued_at_height = l.h.store().height() + 1;
    seal(future);
    EXPECT_EQ(verify(future, l.h.store()).fields, std::vector<std::string>{"issued_at_height"});
}

TEST(Verify, UnknownTargets)
{
    Lifecycle l;
    auto p = l.pending;
    p.product_id = 9;
    EXPECT_EQ(verify(p, l.h.store()).reason, UnknownReason::UnknownProduct);
    p.company = test::address_from_byte(0x70);
    EXPECT_EQ(verify(p, l.h.store()).reason, UnknownReason::UnknownCompany);
    EXPECT_THROW(issue_payload(l.h.store(), l.company, 4), Error);
}

TEST(Symbol, VersionSelectionMatchesByteCapacities)
{
    EXPECT_EQ(QrSymbol::encode_bytes(Bytes(14, 'a')).version(), 1);
    EXPECT_EQ(QrSymbol::encode_bytes(Bytes(15, 'a')).version(), 2);
    EXPECT_EQ(QrSymbol::encode_bytes(Bytes(17, 'a'), Ecc::Low).version(), 1);
    EXPECT_EQ(QrSymbol::encode_bytes(Bytes(7, 'a'), Ecc::High).version(), 1);
    EXPECT_EQ(QrSymbol::encode_bytes(Bytes(106, 'a')).version(), 6);
    EXPECT_EQ(QrSymbol::encode_bytes(Bytes(107, 'a')).version(), 7);
    EXPECT_EQ(QrSymbol::encode_bytes(Bytes(2331, 'a')).version(), 40);
    EXPECT_THROW(QrSymbol::encode_bytes(Bytes(2332, 'a')), std::length_error);
    const auto s = QrSymbol::encode_text("x");
    EXPECT_EQ(s.size(), 21);
    EXPECT_GE(s.mask(), 0);
    EXPECT_LT(s.mask(), 8);
}

TEST(Symbol, FinderPatternsAreInPlace)
{
    const auto s = QrSymbol::encode_text("finder");
    for (auto [ox, oy] : {std::pair{0, 0}, std::pair{s.size() - 7, 0}, std::pair{0, s.size() - 7}}) {
        for (int d = 0; d < 7; ++d) {
            EXPECT_TRUE(s.module(ox + d, oy));
            EXPECT_TRUE(s.module(ox, oy + d));
        }
        EXPECT_FALSE(s.module(ox + 1, oy + 1));
        EXPECT_TRUE(s.module(ox + 3, oy + 3));
    }
}

TEST(Symbol, PayloadSymbolsDecodeWithAnIndependentReader)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 12; ++i) {
        const auto text = encode_text(random_payload(rng));
        const auto symbol = QrSymbol::encode_text(text);
        const auto decoded = detect_text(render(symbol));
        ASSERT_TRUE(decoded.has_value()) << "version " << symbol.version();
        EXPECT_EQ(*decoded, text);
    }
}

TEST(Symbol, AllEccLevelsAndManyVersionsDecode)
{
    std::mt19937_64 rng(10);
    static constexpr std::string_view kChars = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_:";
    for (Ecc ecc : {Ecc::Low, Ecc::Medium, Ecc::Quartile, Ecc::High}) {
        for (std::size_t len : {1u, 10u, 30u, 60u, 120u, 200u, 300u}) {
            std::string text(len, ' ');
            for (auto& c : text) c = kChars[rng() % kChars.size()];
            const auto symbol = QrSymbol::encode_text(text, ecc);
            const auto decoded = detect_text(render(symbol));
            ASSERT_TRUE(decoded.has_value()) << "len " << len << " version " << symbol.version();
            EXPECT_EQ(*decoded, text);
        }
    }
}
