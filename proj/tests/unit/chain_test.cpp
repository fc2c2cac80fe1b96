#include <gtest/gtest.h>

#include <thread>

#include <pchain/chain/chain_store.hpp>
#include <pchain/chain/executor.hpp>

#include "support/harness.hpp"

using namespace pchain;
using namespace pchain::chain;

namespace {

Wei total_supply(const vm::WorldState& s)
{
    Wei sum = 0;
    for (const auto& [a, v] : s.balances) sum += v;
    return sum;
}

}  // namespace

TEST(Genesis, CarriesTheDeployReceipt)
{
    test::Harness h;
    ASSERT_EQ(h.store().blocks().size(), 1u);
    const auto& g = h.store().tip();
    EXPECT_EQ(g.height, 0u);
    ASSERT_EQ(g.receipts.size(), 1u);
    EXPECT_EQ(g.receipts[0].gas_used, 133405u);
    EXPECT_EQ(g.receipts[0].fee_wei, Wei(133405) * kWeiPerGwei);
    EXPECT_TRUE(g.receipts[0].success);
    EXPECT_EQ(g.state_root, vm::compute_state_root(vm::WorldState{}));
}

TEST(Submit, AcceptsAndRejects)
{
    test::Harness h;
    const auto alice = test::key_from_byte(1);
    const auto bob = test::key_from_byte(2);
    h.fund(test::address_of(alice), kWeiPerEth);
    h.produce();

    const auto stx = h.make(alice, CreateCompany{"Acme", 1000});
    const auto first = h.submit(stx);
    EXPECT_TRUE(first.accepted());
    EXPECT_EQ(first.tx_hash, stx.tx_hash);
    EXPECT_EQ(h.submit(stx).error, Errc::NonceGap);

    EXPECT_EQ(h.send(bob, CreateCompany{"Bob", 0}).error, Errc::InsufficientBalance);
    EXPECT_EQ(h.send(alice, Mint{test::address_of(alice)}, 5).error, Errc::Unauthorized);

    auto forged = h.make(alice, Transfer{test::address_of(bob)}, 1);
    forged.signature[10] ^= 0x01;
    EXPECT_EQ(h.submit(forged).error, Errc::BadSignature);

    auto skipped = h.make(alice, Transfer{test::address_of(bob)}, 1);
    skipped.tx.nonce += 1;
    skipped = sign_transaction(skipped.tx, alice);
    EXPECT_EQ(h.submit(skipped).error, Errc::NonceGap);

    h.produce();
    EXPECT_EQ(h.submit(stx).error, Errc::NonceGap);
    EXPECT_EQ(h.store().receipt(stx.tx_hash)->success, true);
}

TEST(Submit, PendingReservationsAccumulate)
{
    test::Harness h;
    const auto alice = test::key_from_byte(1);
    const Wei transfer_fee = Wei(21000) * kWeiPerGwei;
    h.fund(test::address_of(alice), 2 * transfer_fee + 10);
    h.produce();
    EXPECT_TRUE(h.send(alice, Transfer{test::address_from_byte(9)}, 5).accepted());
    EXPECT_TRUE(h.send(alice, Transfer{test::address_from_byte(9)}, 5).accepted());
    EXPECT_EQ(h.send(alice, Transfer{test::address_from_byte(9)}, 0).error, Errc::InsufficientBalance);
    h.produce();
    EXPECT_EQ(h.state().balance_of(test::address_of(alice)), Wei(0));
    EXPECT_EQ(h.state().balance_of(test::address_from_byte(9)), Wei(10));
}

TEST(Produce, EmptyBlockKeepsTheStateRoot)
{
    test::Harness h;
    h.fund(test::address_from_byte(3), 77);
    const auto root = h.produce().state_root;
    const auto& b = h.produce();
    EXPECT_EQ(b.height, 2u);
    EXPECT_TRUE(b.transactions.empty());
    EXPECT_EQ(b.state_root, root);
}

TEST(Produce, ReceiptFeesFollowTheSchedule)
{
    test::Harness h;
    const auto mfr = test::key_from_byte(1);
    const auto seller = test::key_from_byte(2);
    h.fund(test::address_of(mfr), kWeiPerEth);
    h.fund(test::address_of(seller), kWeiPerEth);
    h.produce();

    const auto r1 = h.run(mfr, CreateCompany{"Acme", 1000});
    ASSERT_TRUE(r1.success);
    EXPECT_EQ(r1.fee_wei, Wei(1068597) * kWeiPerGwei);
    const Address company = *r1.company;

    const auto r2 = h.run(mfr, EnrollProduct{company, "Watch", 500, 3});
    EXPECT_EQ(r2.fee_wei, Wei(208571) * kWeiPerGwei);
    EXPECT_EQ(r2.product_id, std::optional<std::uint64_t>(0));

    const auto r3 = h.run(seller, RegisterSeller{company}, 1000);
    EXPECT_EQ(r3.fee_wei, Wei(45755) * kWeiPerGwei);
    const auto r4 = h.run(seller, BuyProduct{company, 0, "Shop", 1}, 500);
    EXPECT_EQ(r4.fee_wei, Wei(41581) * kWeiPerGwei);
    const auto r5 = h.run(mfr, DistributeProduct{company, 0});
    EXPECT_EQ(r5.fee_wei, Wei(55578) * kWeiPerGwei);
    EXPECT_TRUE(r2.success && r3.success && r4.success && r5.success);

    const auto spent = Wei(1068597 + 208571 + 55578) * kWeiPerGwei;
    EXPECT_EQ(h.state().balance_of(test::address_of(mfr)), kWeiPerEth - spent + 1500);
}

TEST(Produce, FailedCallPaysFeeAndBumpsNonce)
{
    test::Harness h;
    const auto alice = test::key_from_byte(1);
    const Address a = test::address_of(alice);
    h.fund(a, kWeiPerEth);
    h.produce();
    const auto before = h.state();
    const auto r = h.run(alice, RegisterSeller{test::address_from_byte(0x77)}, 0);
    EXPECT_FALSE(r.success);
    EXPECT_EQ(r.error, Errc::UnknownCompany);
    EXPECT_EQ(r.fee_wei, Wei(45755) * kWeiPerGwei);
    EXPECT_EQ(h.state().balance_of(a), before.balance_of(a) - r.fee_wei);
    EXPECT_EQ(h.state().nonce_of(a), before.nonce_of(a) + 1);
    EXPECT_EQ(h.state().companies, before.companies);
}

TEST(Produce, BlockCapSplitsLargeBacklogs)
{
    test::Harness h;
    for (int i = 0; i < 150; ++i) h.fund(test::address_from_byte(static_cast<std::uint8_t>(i % 7)), 1);
    EXPECT_EQ(h.produce().transactions.size(), kMaxBlockTransactions);
    EXPECT_EQ(h.produce().transactions.size(), 50u);
    EXPECT_TRUE(validate_chain(h.store()).ok());
}

TEST(Produce, TimestampsNeverRegress)
{
    test::Harness h;
    const auto& a = produce_block(h.store(), h.pool(), 5'000);
    EXPECT_EQ(a.timestamp, 5'000u);
    const auto& b = produce_block(h.store(), h.pool(), 10);
    EXPECT_EQ(b.timestamp, 5'000u);
}

TEST(Replay, SameTransactionsGiveSameRoot)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        test::Harness h;
        test::ScenarioGenerator gen(seed);
        gen.fund_all(h);
        for (int i = 0; i < 10; ++i) gen.step(h);
        h.produce();

        ChainStore fresh(h.params());
        for (std::size_t i = 1; i < h.store().blocks().size(); ++i) {
            ASSERT_TRUE(fresh.apply_block(h.store().blocks()[i]).ok());
        }
        EXPECT_EQ(fresh.tip().state_root, h.store().tip().state_root);
        EXPECT_EQ(fresh.state(), h.state());
    }
}

TEST(Validate, HonestChainIsValid)
{
    test::Harness h;
    test::ScenarioGenerator gen(7);
    gen.fund_all(h);
    for (int b = 0; b < 4; ++b) {
        for (int i = 0; i < 6; ++i) gen.step(h);
        h.produce();
    }
    EXPECT_EQ(h.store().height(), 5u);
    const auto v = validate_chain(h.store());
    EXPECT_TRUE(v.ok()) << v.detail;
}

TEST(Validate, TamperedTransactionIsReportedAtItsHeight)
{
    test::Harness h;
    test::ScenarioGenerator gen(8);
    gen.fund_all(h);
    for (int b = 0; b < 4; ++b) {
        for (int i = 0; i < 5; ++i) gen.step(h);
        h.produce();
    }
    auto& blocks = h.store().mutable_blocks_for_testing();
    ASSERT_FALSE(blocks[3].transactions.empty());
    blocks[3].transactions[0].tx.value_wei += 1;
    const auto v = validate_chain(h.store());
    EXPECT_FALSE(v.ok());
    EXPECT_EQ(v.height, 3u);
    EXPECT_EQ(v.failure, ValidationFailure::BlockHashMismatch);
}

TEST(Validate, ResignedTamperIsCaughtByTheStateRoot)
{
    test::Harness h;
    const auto alice = test::key_from_byte(1);
    h.fund(test::address_of(alice), kWeiPerEth);
    h.produce();
    h.run(alice, Transfer{test::address_from_byte(5)}, 100);
    h.produce();

    auto& blocks = h.store().mutable_blocks_for_testing();
    blocks[2].state_root[0] ^= 0xff;
    blocks[2].block_hash = compute_block_hash(blocks[2]);
    const auto v = validate_chain(h.store());
    EXPECT_EQ(v.failure, ValidationFailure::StateRootMismatch);
    EXPECT_EQ(v.height, 2u);
}

TEST(Validate, BrokenLinkIsReported)
{
    test::Harness h;
    h.produce();
    h.produce();
    auto& blocks = h.store().mutable_blocks_for_testing();
    blocks[2].prev_hash[5] ^= 1;
    blocks[2].block_hash = compute_block_hash(blocks[2]);
    const auto v = validate_chain(h.store());
    EXPECT_EQ(v.failure, ValidationFailure::PrevHashMismatch);
    EXPECT_EQ(v.height, 2u);
}

TEST(ApplyBlock, RejectsForeignReceipts)
{
    test::Harness h;
    const auto alice = test::key_from_byte(1);
    h.fund(test::address_of(alice), kWeiPerEth);
    h.produce();
    h.send(alice, Transfer{test::address_from_byte(5)}, 100);
    h.produce();

    ChainStore other(h.params());
    ASSERT_TRUE(other.apply_block(h.store().blocks()[1]).ok());
    Block b = h.store().blocks()[2];
    b.receipts[0].gas_used += 1;
    b.block_hash = compute_block_hash(b);
    EXPECT_EQ(other.apply_block(b).failure, ValidationFailure::ReceiptMismatch);
    EXPECT_EQ(other.height(), 1u);
}

TEST(Conservation, SupplyOnlyGrowsByMints)
{
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        test::Harness h;
        test::ScenarioGenerator gen(seed);
        gen.fund_all(h);
        const Wei minted = 5 * kWeiPerEth;
        for (int b = 0; b < 5; ++b) {
            for (int i = 0; i < 10; ++i) gen.step(h);
            h.produce();
            ASSERT_EQ(total_supply(h.state()), minted);
            for (const auto& [addr, c] : h.state().companies) {
                for (const auto& p : c.products) {
                    if (p.status == vm::ProductStatus::Shipped)
                        EXPECT_EQ(p.order_status, vm::OrderStatus::Complete);
                }
            }
        }
    }
}

TEST(Submit, ConcurrentSubmittersAllLand)
{
    test::Harness h;
    std::vector<crypto::KeyPair> keys;
    for (std::uint8_t i = 1; i <= 8; ++i) {
        keys.push_back(test::key_from_byte(i));
        h.fund(test::address_of(keys.back()), kWeiPerEth);
    }
    h.produce();

    std::vector<std::vector<SignedTransaction>> batches(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k) {
        for (std::uint64_t n = 0; n < 20; ++n) {
            Transaction tx{test::address_of(keys[k]), n, Transfer{test::address_from_byte(0x99)}, 1};
            batches[k].push_back(sign_transaction(tx, keys[k]));
        }
    }
    std::vector<std::thread> threads;
    std::atomic<int> rejected{0};
    for (std::size_t k = 0; k < keys.size(); ++k) {
        threads.emplace_back([&, k] {
            for (const auto& stx : batches[k])
                if (!h.pool().submit(stx).accepted()) ++rejected;
        });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(rejected.load(), 0);
    EXPECT_EQ(h.pool().size(), 160u);
    h.produce();
    h.produce();
    EXPECT_EQ(h.state().balance_of(test::address_from_byte(0x99)), Wei(160));
    EXPECT_TRUE(validate_chain(h.store()).ok());
}

TEST(Executor, WrongNonceIsNotExecutable)
{
    test::Harness h;
    const auto alice = test::key_from_byte(1);
    h.fund(test::address_of(alice), kWeiPerEth);
    h.produce();
    vm::WorldState s = h.state();
    Transaction tx{test::address_of(alice), 3, Transfer{test::address_from_byte(5)}, 1};
    EXPECT_FALSE(execute_transaction(s, sign_transaction(tx, alice), h.params()).has_value());
    EXPECT_EQ(s, h.state());
}
