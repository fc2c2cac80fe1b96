#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <pchain/chain/block_log.hpp>
#include <pchain/chain/chain_store.hpp>
#include <pchain/chain/executor.hpp>
#include <pchain/chain/mempool.hpp>
#include <pchain/crypto/keys.hpp>
#include <pchain/vm/contract.hpp>

namespace pchain::test {

inline crypto::KeyPair key_from_byte(std::uint8_t b)
{
    crypto::Seed seed{};
    seed.fill(b);
    return crypto::generate_keypair(seed);
}

inline Address address_of(const crypto::KeyPair& k)
{
    return crypto::derive_address(k.public_key);
}

inline Address address_from_byte(std::uint8_t b)
{
    Address::Storage s{};
    s.fill(b);
    return Address(s);
}

/// A single-node chain with a deterministic producer and clock.
class Harness {
public:
    explicit Harness(std::uint8_t producer_seed = 0xaa)
        : producer_(key_from_byte(producer_seed)), store_(params_for(producer_)),
          pool_(store_.params(), store_.state_ptr())
    {
    }

    static chain::ChainParams params_for(const crypto::KeyPair& producer)
    {
        chain::ChainParams p;
        p.producer = address_of(producer);
        return p;
    }

    const crypto::KeyPair& producer() const { return producer_; }
    chain::ChainStore& store() { return store_; }
    chain::Mempool& pool() { return pool_; }
    const vm::WorldState& state() const { return store_.state(); }
    const chain::ChainParams& params() const { return store_.params(); }

    chain::SignedTransaction make(const crypto::KeyPair& key, chain::Action action, Wei value = 0)
    {
        chain::Transaction tx;
        tx.sender = address_of(key);
        if (pool_.base() != store_.state_ptr()) pool_.on_block_committed(store_.state_ptr());
        tx.nonce = pool_.next_nonce(tx.sender);
        tx.action = std::move(action);
        tx.value_wei = value;
        return chain::sign_transaction(tx, key);
    }

    chain::SubmitResult submit(const chain::SignedTransaction& stx) { return chain::submit(stx, store_, pool_); }

    chain::SubmitResult send(const crypto::KeyPair& key, chain::Action action, Wei value = 0)
    {
        return submit(make(key, std::move(action), value));
    }

    void fund(const Address& to, Wei amount)
    {
        auto r = send(producer_, chain::Mint{to}, amount);
        if (!r.accepted()) throw std::runtime_error("mint rejected");
    }

    const chain::Block& produce() { return chain::produce_block(store_, pool_, ++clock_); }

    /// Submits, produces a block and returns the receipt.
    vm::ExecutionReceipt run(const crypto::KeyPair& key, chain::Action action, Wei value = 0)
    {
        auto r = send(key, std::move(action), value);
        if (!r.accepted()) throw Error(r.error, "submit rejected: " + std::string(to_string(r.error)));
        produce();
        return *store_.receipt(r.tx_hash);
    }

private:
    crypto::KeyPair producer_;
    chain::ChainStore store_;
    chain::Mempool pool_;
    std::uint64_t clock_ = 1'700'000'000;
};

/// Random but always-admissible workload over a small cast of accounts.
/// Generates a mix of successful and failing contract calls.
class ScenarioGenerator {
public:
    explicit ScenarioGenerator(std::uint64_t seed) : rng_(seed)
    {
        for (std::uint8_t i = 1; i <= 5; ++i) keys_.push_back(key_from_byte(i));
    }

    void fund_all(Harness& h, Wei amount = kWeiPerEth)
    {
        for (const auto& k : keys_) h.fund(address_of(k), amount);
        h.produce();
    }

    /// One random admissible transaction, submitted into the harness pool.
    chain::SubmitResult step(Harness& h)
    {
        const auto& key = keys_[pick(keys_.size())];
        const auto& st = h.state();
        std::vector<Address> companies;
        for (const auto& [addr, c] : st.companies) companies.push_back(addr);

        const auto choice = pick(companies.empty() ? 1 : 6);
        if (choice == 0 || companies.empty()) {
            return h.send(key, chain::CreateCompany{"Co" + std::to_string(pick(1000)), Wei(pick(5)) * 1000});
        }
        const Address company = companies[pick(companies.size())];
        const auto& c = st.companies.at(company);
        const std::uint64_t pid = c.products.empty() ? 0 : pick(c.products.size() + 1);
        switch (choice) {
        case 1:
            return h.send(key, chain::EnrollProduct{company, "P" + std::to_string(pick(100)), Wei(pick(4)) * 100,
                                                    pick(4)});
        case 2:
            return h.send(key, chain::RegisterSeller{company}, Wei(pick(6)) * 1000);
        case 3: {
            const Wei price = pid < c.products.size() ? c.products[pid].price_wei : 100;
            const std::uint64_t qty = 1 + pick(2);
            Wei value = price * qty;
            if (value > 0 && pick(4) == 0) value -= 1;
            return h.send(key, chain::BuyProduct{company, pid, "Shop" + std::to_string(pick(9)), qty}, value);
        }
        case 4:
            return h.send(key, chain::DistributeProduct{company, pid});
        default:
            return h.send(key, chain::Transfer{address_of(keys_[pick(keys_.size())])}, Wei(pick(1000)));
        }
    }

    std::uint64_t pick(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
    const std::vector<crypto::KeyPair>& keys() const { return keys_; }
    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::vector<crypto::KeyPair> keys_;
};

}  // namespace pchain::test
