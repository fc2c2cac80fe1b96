#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <pchain/vm/contract.hpp>
#include <pchain/vm/state.hpp>

#include "golden_vectors.hpp"
#include "support/harness.hpp"

using namespace pchain;
using namespace pchain::vm;

namespace {

WorldState small_state()
{
    const Address owner = test::address_of(test::key_from_byte(1));
    const Address seller = test::address_from_byte(0x22);

    Company c;
    c.contract_address = contract_address_for(owner, 0);
    c.name = "Acme";
    c.manufacturer = owner;
    c.min_registration_fee_wei = 1'000'000;
    c.sellers = {seller, test::address_from_byte(0x05)};
    Product p;
    p.id = 0;
    p.name = "Watch";
    p.price_wei = Wei(50'000'000'000'000'000ULL);
    p.stock = 9;
    p.status = ProductStatus::Shipped;
    p.order_status = OrderStatus::Complete;
    p.owner_name = "Shop";
    p.owner_address = seller;
    c.products.push_back(p);

    WorldState s;
    s.companies[c.contract_address] = c;
    s.balances[owner] = kWeiPerEth;
    s.balances[seller] = 42;
    s.balances[test::address_from_byte(0x33)] = 0;
    return s;
}

}  // namespace

TEST(StateRoot, EmptyStateGolden)
{
    EXPECT_EQ(to_hex(compute_state_root(WorldState{})), golden::kEmptyStateRoot);
}

TEST(StateRoot, SmallStateGolden)
{
    EXPECT_EQ(to_hex(compute_state_root(small_state())), golden::kSmallStateRoot);
}

TEST(StateRoot, NoncesAndZeroBalancesAreNotCommitted)
{
    auto s = small_state();
    const auto root = compute_state_root(s);
    s.nonces[test::address_from_byte(0x22)] = 12;
    s.balances[test::address_from_byte(0x44)] = 0;
    EXPECT_EQ(compute_state_root(s), root);
}

TEST(StateRoot, InsertionOrderDoesNotMatter)
{
    std::mt19937_64 rng(3);
    std::vector<std::pair<Address, Wei>> entries;
    for (std::uint8_t i = 1; i <= 40; ++i) entries.push_back({test::address_from_byte(i), Wei(i) * 7});
    const auto build = [&] {
        WorldState s = small_state();
        for (const auto& [a, v] : entries) s.balances[a] = v;
        return compute_state_root(s);
    };
    const auto root = build();
    for (int i = 0; i < 20; ++i) {
        std::shuffle(entries.begin(), entries.end(), rng);
        EXPECT_EQ(build(), root);
    }
}

TEST(StateRoot, EverySingleFieldMutationChangesTheRoot)
{
    const auto base = small_state();
    const auto root = compute_state_root(base);
    std::mt19937_64 rng(11);
    const Address key = base.companies.begin()->first;
    for (int i = 0; i < 100; ++i) {
        WorldState s = base;
        Company& c = s.companies.at(key);
        Product& p = c.products[0];
        const std::uint64_t delta = 1 + rng() % 1000;
        switch (i % 13) {
        case 0: c.name += static_cast<char>('a' + delta % 26); break;
        case 1: c.manufacturer = test::address_from_byte(static_cast<std::uint8_t>(0x60 + delta % 64)); break;
        case 2: c.min_registration_fee_wei += delta; break;
        case 3: c.sellers.insert(test::address_from_byte(static_cast<std::uint8_t>(0x80 + delta % 64))); break;
        case 4: p.name = "W" + std::to_string(delta); break;
        case 5: p.price_wei += delta; break;
        case 6: p.stock += delta; break;
        case 7: p.status = ProductStatus::ReadyToGo; break;
        case 8: p.order_status = delta % 2 ? OrderStatus::Pending : OrderStatus::None; break;
        case 9: p.owner_name = "S" + std::to_string(delta); break;
        case 10: p.owner_address = test::address_from_byte(static_cast<std::uint8_t>(0xc0 + delta % 63)); break;
        case 11: s.balances[test::address_from_byte(0x22)] += delta; break;
        default: {
            Company moved = c;
            s.companies.erase(key);
            Address::Storage raw = key.bytes();
            raw[19] ^= static_cast<std::uint8_t>(1 + delta % 255);
            moved.contract_address = Address(raw);
            s.companies[moved.contract_address] = moved;
            break;
        }
        }
        EXPECT_NE(compute_state_root(s), root) << "mutation " << i;
    }
}

TEST(StateEnums, TextRoundTrip)
{
    for (auto s : {ProductStatus::ReadyToGo, ProductStatus::Shipped})
        EXPECT_EQ(product_status_from_string(to_string(s)), s);
    for (auto s : {OrderStatus::None, OrderStatus::Pending, OrderStatus::Complete})
        EXPECT_EQ(order_status_from_string(to_string(s)), s);
    EXPECT_FALSE(product_status_from_string("Lost").has_value());
}
