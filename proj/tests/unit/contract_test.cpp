#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include <pchain/crypto/hash.hpp>
#include <pchain/vm/contract.hpp>
#include <pchain/vm/gas.hpp>

#include "golden_vectors.hpp"
#include "support/harness.hpp"

using namespace pchain;
using namespace pchain::vm;

namespace {

const Address kManufacturer = test::address_from_byte(0x10);
const Address kSeller = test::address_from_byte(0x20);
const Address kStranger = test::address_from_byte(0x30);

struct Fixture {
    WorldState state;
    Address company;
    std::uint64_t nonce = 0;

    Fixture()
    {
        state.balances[kManufacturer] = kWeiPerEth;
        state.balances[kSeller] = kWeiPerEth;
        state.balances[kStranger] = kWeiPerEth;
        company = *create_company(state, ctx(kManufacturer), "Acme", 1000).company;
    }

    CallContext ctx(const Address& sender, Wei value = 0) { return CallContext{sender, nonce++, value}; }

    std::uint64_t enroll(const std::string& name = "Watch", Wei price = 100, std::uint64_t stock = 10)
    {
        return *enroll_product(state, ctx(kManufacturer), company, name, price, stock).product_id;
    }
};

}  // namespace

TEST(CreateCompany, RecordsManufacturerAndFee)
{
    Fixture f;
    const auto& c = f.state.companies.at(f.company);
    EXPECT_EQ(c.name, "Acme");
    EXPECT_EQ(c.manufacturer, kManufacturer);
    EXPECT_EQ(c.min_registration_fee_wei, Wei(1000));
    EXPECT_TRUE(c.products.empty());
}

TEST(CreateCompany, NameIsValidated)
{
    WorldState s;
    EXPECT_EQ(create_company(s, {kManufacturer, 0, 0}, "", 1).error, Errc::NameInvalid);
    EXPECT_EQ(create_company(s, {kManufacturer, 0, 0}, std::string(65, 'a'), 1).error, Errc::NameInvalid);
    EXPECT_EQ(create_company(s, {kManufacturer, 0, 0}, "\xff\xfe", 1).error, Errc::NameInvalid);
    EXPECT_TRUE(create_company(s, {kManufacturer, 0, 0}, std::string(64, 'a'), 1).ok());
    EXPECT_TRUE(create_company(s, {kManufacturer, 1, 0}, "Caf\xc3\xa9", 1).ok());
    EXPECT_EQ(s.companies.size(), 2u);
}

TEST(CreateCompany, ContractAddressDerivesFromSenderAndNonce)
{
    const Address sender = test::address_of(test::key_from_byte(1));
    EXPECT_EQ(contract_address_for(sender, 0).to_text(), golden::kContractNonce0);
    EXPECT_EQ(contract_address_for(sender, 1).to_text(), golden::kContractNonce1);

    WorldState s;
    const auto a = create_company(s, {sender, 0, 0}, "A", 0);
    const auto b = create_company(s, {sender, 1, 0}, "B", 0);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_NE(*a.company, *b.company);
    EXPECT_EQ(a.company->to_text(), golden::kContractNonce0);
}

TEST(EnrollProduct, ManufacturerAppendsInOrder)
{
    Fixture f;
    EXPECT_EQ(f.enroll("A"), 0u);
    EXPECT_EQ(f.enroll("B"), 1u);
    EXPECT_EQ(f.enroll("C"), 2u);
    const auto& products = f.state.companies.at(f.company).products;
    for (std::uint64_t i = 0; i < products.size(); ++i) EXPECT_EQ(products[i].id, i);

    const auto p = query_product(f.state, f.company, 0);
    EXPECT_EQ(p.status, ProductStatus::ReadyToGo);
    EXPECT_EQ(p.order_status, OrderStatus::None);
    EXPECT_EQ(p.owner_address, kManufacturer);
    EXPECT_EQ(p.owner_name, "Acme");
}

TEST(EnrollProduct, Guards)
{
    Fixture f;
    const auto before = f.state;
    EXPECT_EQ(enroll_product(f.state, f.ctx(kStranger), f.company, "W", 1, 1).error, Errc::Unauthorized);
    EXPECT_EQ(enroll_product(f.state, f.ctx(kManufacturer), kStranger, "W", 1, 1).error, Errc::UnknownCompany);
    EXPECT_EQ(enroll_product(f.state, f.ctx(kManufacturer), f.company, "", 1, 1).error, Errc::NameInvalid);
    EXPECT_EQ(enroll_product(f.state, f.ctx(kManufacturer), f.company, "W", 1, 0).error, Errc::ZeroStock);
    EXPECT_EQ(enroll_product(f.state, f.ctx(kManufacturer, 5), f.company, "W", 1, 1).error, Errc::UnexpectedValue);
    EXPECT_EQ(f.state, before);
}

TEST(RegisterSeller, ExactMinimumFeePasses)
{
    Fixture f;
    const auto out = register_seller(f.state, f.ctx(kSeller, 1000), f.company);
    ASSERT_TRUE(out.ok());
    EXPECT_TRUE(f.state.companies.at(f.company).is_registered(kSeller));
    EXPECT_EQ(f.state.balance_of(kManufacturer), kWeiPerEth + 1000);
    EXPECT_EQ(f.state.balance_of(kSeller), kWeiPerEth - 1000);
}

TEST(RegisterSeller, SecondRegistrationIsRejected)
{
    Fixture f;
    ASSERT_TRUE(register_seller(f.state, f.ctx(kSeller, 1000), f.company).ok());
    const auto before = f.state;
    EXPECT_EQ(register_seller(f.state, f.ctx(kSeller, 1000), f.company).error, Errc::AlreadyRegistered);
    EXPECT_EQ(f.state, before);
}

TEST(RegisterSeller, FeeOneBelowMinimumIsRejected)
{
    Fixture f;
    const auto before = f.state;
    EXPECT_EQ(register_seller(f.state, f.ctx(kSeller, 999), f.company).error, Errc::FeeTooLow);
    EXPECT_EQ(f.state, before);
    EXPECT_EQ(register_seller(f.state, f.ctx(kSeller, 1000), kStranger).error, Errc::UnknownCompany);
    EXPECT_EQ(register_seller(f.state, f.ctx(kManufacturer, 1000), f.company).error, Errc::Unauthorized);
}

TEST(BuyProduct, ExactValueTransfersOwnership)
{
    Fixture f;
    const auto id = f.enroll("Watch", 100, 10);
    ASSERT_TRUE(register_seller(f.state, f.ctx(kSeller, 1000), f.company).ok());
    const auto out = buy_product(f.state, f.ctx(kSeller, 300), f.company, id, "Shop", 3);
    ASSERT_TRUE(out.ok());
    const auto p = query_product(f.state, f.company, id);
    EXPECT_EQ(p.owner_name, "Shop");
    EXPECT_EQ(p.owner_address, kSeller);
    EXPECT_EQ(p.order_status, OrderStatus::Pending);
    EXPECT_EQ(p.status, ProductStatus::ReadyToGo);
    EXPECT_EQ(p.stock, 7u);
    EXPECT_EQ(f.state.balance_of(kManufacturer), kWeiPerEth + 1300);
}

TEST(BuyProduct, UnregisteredSenderIsRejected)
{
    Fixture f;
    const auto id = f.enroll();
    const auto before = f.state;
    EXPECT_EQ(buy_product(f.state, f.ctx(kStranger, 100), f.company, id, "X", 1).error, Errc::NotRegisteredSeller);
    EXPECT_EQ(f.state, before);
}

TEST(BuyProduct, ValueThresholdIsPriceTimesQuantity)
{
    // Brute-force sweep over [0, 2 * price * quantity].
    std::optional<Wei> first_success;
    for (Wei value = 0; value <= 600; ++value) {
        Fixture f;
        const auto id = f.enroll("Watch", 100, 10);
        ASSERT_TRUE(register_seller(f.state, f.ctx(kSeller, 1000), f.company).ok());
        const auto out = buy_product(f.state, f.ctx(kSeller, value), f.company, id, "Shop", 3);
        if (value < 300) {
            EXPECT_EQ(out.error, Errc::ValueTooLow) << "value " << static_cast<unsigned long long>(value);
        } else {
            EXPECT_TRUE(out.ok()) << "value " << static_cast<unsigned long long>(value);
            if (!first_success) first_success = value;
        }
    }
    ASSERT_TRUE(first_success.has_value());
    EXPECT_EQ(*first_success, Wei(300));
}

TEST(BuyProduct, RemainingGuards)
{
    Fixture f;
    const auto id = f.enroll("Watch", 100, 2);
    ASSERT_TRUE(register_seller(f.state, f.ctx(kSeller, 1000), f.company).ok());
    ASSERT_TRUE(register_seller(f.state, f.ctx(kStranger, 1000), f.company).ok());
    const auto before = f.state;
    EXPECT_EQ(buy_product(f.state, f.ctx(kSeller, 300), f.company, id, "S", 3).error, Errc::InsufficientStock);
    EXPECT_EQ(buy_product(f.state, f.ctx(kSeller, 0), f.company, id, "S", 0).error, Errc::ZeroQuantity);
    EXPECT_EQ(buy_product(f.state, f.ctx(kSeller, 100), f.company, 9, "S", 1).error, Errc::UnknownProduct);
    EXPECT_EQ(buy_product(f.state, f.ctx(kSeller, 100), kSeller, id, "S", 1).error, Errc::UnknownCompany);
    EXPECT_EQ(buy_product(f.state, f.ctx(kSeller, 100), f.company, id, "", 1).error, Errc::NameInvalid);
    EXPECT_EQ(f.state, before);

    ASSERT_TRUE(buy_product(f.state, f.ctx(kSeller, 100), f.company, id, "S", 1).ok());
    EXPECT_EQ(buy_product(f.state, f.ctx(kStranger, 100), f.company, id, "T", 1).error, Errc::AlreadySold);
    ASSERT_TRUE(distribute_product(f.state, f.ctx(kManufacturer), f.company, id).ok());
    EXPECT_EQ(buy_product(f.state, f.ctx(kStranger, 100), f.company, id, "T", 1).error, Errc::AlreadySold);
}

TEST(BuyProduct, OverflowingRequiredAmountIsValueTooLow)
{
    Fixture f;
    const Wei huge = ~Wei(0) / 2;
    const auto id = f.enroll("Gold", huge, 10);
    ASSERT_TRUE(register_seller(f.state, f.ctx(kSeller, 1000), f.company).ok());
    EXPECT_EQ(buy_product(f.state, f.ctx(kSeller, 5), f.company, id, "S", 3).error, Errc::ValueTooLow);
}

TEST(DistributeProduct, ShipsAPendingOrder)
{
    Fixture f;
    const auto id = f.enroll();
    ASSERT_TRUE(register_seller(f.state, f.ctx(kSeller, 1000), f.company).ok());
    ASSERT_TRUE(buy_product(f.state, f.ctx(kSeller, 100), f.company, id, "Shop", 1).ok());
    ASSERT_TRUE(distribute_product(f.state, f.ctx(kManufacturer), f.company, id).ok());
    const auto p = query_product(f.state, f.company, id);
    EXPECT_EQ(p.status, ProductStatus::Shipped);
    EXPECT_EQ(p.order_status, OrderStatus::Complete);
    EXPECT_EQ(p.owner_name, "Shop");
}

TEST(DistributeProduct, Guards)
{
    Fixture f;
    const auto id = f.enroll();
    EXPECT_EQ(distribute_product(f.state, f.ctx(kManufacturer), f.company, id).error, Errc::NoPendingOrder);
    ASSERT_TRUE(register_seller(f.state, f.ctx(kSeller, 1000), f.company).ok());
    ASSERT_TRUE(buy_product(f.state, f.ctx(kSeller, 100), f.company, id, "Shop", 1).ok());
    const auto before = f.state;
    EXPECT_EQ(distribute_product(f.state, f.ctx(kSeller), f.company, id).error, Errc::Unauthorized);
    EXPECT_EQ(distribute_product(f.state, f.ctx(kManufacturer), f.company, 5).error, Errc::UnknownProduct);
    EXPECT_EQ(distribute_product(f.state, f.ctx(kManufacturer), kSeller, id).error, Errc::UnknownCompany);
    EXPECT_EQ(f.state, before);
    ASSERT_TRUE(distribute_product(f.state, f.ctx(kManufacturer), f.company, id).ok());
    EXPECT_EQ(distribute_product(f.state, f.ctx(kManufacturer), f.company, id).error, Errc::NoPendingOrder);
}

TEST(Queries, UnknownIdentifiersThrow)
{
    Fixture f;
    f.enroll();
    EXPECT_THROW(query_product(f.state, f.company, 1), Error);
    EXPECT_THROW(query_company(f.state, kStranger), Error);
    const auto summary = query_company(f.state, f.company);
    EXPECT_EQ(summary.product_count, 1u);
    EXPECT_EQ(summary.seller_count, 0u);
    EXPECT_EQ(list_companies(f.state).size(), 1u);
}

TEST(StatusMachine, ReachablePairsAreExactlyTheLifecycle)
{
    // Every action sequence of length <= 5 on one product.
    enum Step { BuyOk, BuyLow, BuyStranger, ShipMfr, ShipSeller, Register, kSteps };
    std::set<std::pair<ProductStatus, OrderStatus>> reached;
    std::function<void(Fixture, std::uint64_t, int)> walk = [&](Fixture f, std::uint64_t id, int depth) {
        const auto& p = f.state.companies.at(f.company).products[id];
        reached.insert({p.status, p.order_status});
        if (depth == 5) return;
        for (int s = 0; s < kSteps; ++s) {
            Fixture g = f;
            switch (s) {
            case BuyOk: buy_product(g.state, g.ctx(kSeller, 100), g.company, id, "Shop", 1); break;
            case BuyLow: buy_product(g.state, g.ctx(kSeller, 99), g.company, id, "Shop", 1); break;
            case BuyStranger: buy_product(g.state, g.ctx(kStranger, 100), g.company, id, "X", 1); break;
            case ShipMfr: distribute_product(g.state, g.ctx(kManufacturer), g.company, id); break;
            case ShipSeller: distribute_product(g.state, g.ctx(kSeller), g.company, id); break;
            case Register: register_seller(g.state, g.ctx(kSeller, 1000), g.company); break;
            }
            const auto& q = g.state.companies.at(g.company).products[id];
            if (q.status == ProductStatus::Shipped) EXPECT_EQ(q.order_status, OrderStatus::Complete);
            if (q.order_status == OrderStatus::Pending) EXPECT_NE(q.owner_address, kManufacturer);
            walk(std::move(g), id, depth + 1);
        }
    };
    Fixture f;
    const auto id = f.enroll("Watch", 100, 3);
    walk(f, id, 0);

    const std::set<std::pair<ProductStatus, OrderStatus>> expected{
        {ProductStatus::ReadyToGo, OrderStatus::None},
        {ProductStatus::ReadyToGo, OrderStatus::Pending},
        {ProductStatus::Shipped, OrderStatus::Complete},
    };
    EXPECT_EQ(reached, expected);
}

TEST(GuardCompleteness, FailedCallsNeverChangeState)
{
    std::mt19937_64 rng(17);
    const std::array<Address, 4> senders{kManufacturer, kSeller, kStranger, test::address_from_byte(0x40)};
    auto pick = [&](std::uint64_t n) { return rng() % n; };
    int failures = 0;
    for (int round = 0; round < 100; ++round) {
        Fixture f;
        f.enroll("A", 100, 3);
        f.enroll("B", 0, 1);
        for (int i = 0; i < 100; ++i) {
            const Address sender = senders[pick(senders.size())];
            const Address company = pick(5) == 0 ? kStranger : f.company;
            const std::uint64_t pid = pick(3);
            const Wei value = Wei(pick(4)) * 500;
            const auto before = f.state;
            Outcome out;
            switch (pick(6)) {
            case 0: out = create_company(f.state, f.ctx(sender, value), pick(4) == 0 ? "" : "Co", value); break;
            case 1:
                out = enroll_product(f.state, f.ctx(sender, pick(3) == 0 ? value : 0), company, "P", 100, pick(3));
                break;
            case 2: out = register_seller(f.state, f.ctx(sender, value), company); break;
            case 3: out = buy_product(f.state, f.ctx(sender, value), company, pid, "S", pick(3)); break;
            case 4: out = distribute_product(f.state, f.ctx(sender), company, pid); break;
            default: out = transfer(f.state, f.ctx(sender, value * Wei(kWeiPerGwei) * 1'000'000), kSeller); break;
            }
            if (!out.ok()) {
                ++failures;
                ASSERT_EQ(f.state, before) << "error " << to_string(out.error);
            }
        }
    }
    EXPECT_GT(failures, 1000);
}

TEST(GasSchedule, TableValues)
{
    const GasSchedule g;
    using chain::ActionTag;
    EXPECT_EQ(g.deploy_system, 133405u);
    EXPECT_EQ(g.gas_for(ActionTag::CreateCompany), 1068597u);
    EXPECT_EQ(g.gas_for(ActionTag::RegisterSeller), 45755u);
    EXPECT_EQ(g.gas_for(ActionTag::EnrollProduct), 208571u);
    EXPECT_EQ(g.gas_for(ActionTag::BuyProduct), 41581u);
    EXPECT_EQ(g.gas_for(ActionTag::DistributeProduct), 55578u);
    EXPECT_EQ(g.gas_for(ActionTag::Mint), 0u);
    EXPECT_EQ(g.gas_price_wei, Wei(1'000'000'000));
    EXPECT_EQ(g.fee_for(ActionTag::BuyProduct), Wei(41581) * 1'000'000'000);
}
