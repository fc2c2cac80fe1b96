#pragma once

#include <condition_variable>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <thread>

#include <pchain/chain/block_log.hpp>
#include <pchain/chain/chain_store.hpp>
#include <pchain/chain/mempool.hpp>
#include <pchain/node/config.hpp>

namespace pchain::node {

/// Chain parameters implied by a config: producer address from the seed
/// and the configured gas price.
chain::ChainParams chain_params(const NodeConfig& config);

/// The chain, its mempool and the block log behind one producer sequence.
/// Reads run concurrently; block production takes the store exclusively.
class Node {
public:
    /// Loads (or creates) the configured block log. Throws CorruptLogError.
    explicit Node(NodeConfig config);
    ~Node();
    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;

    const NodeConfig& config() const { return config_; }
    const chain::ChainParams& params() const { return params_; }
    const crypto::KeyPair& producer() const { return producer_; }

    chain::SubmitResult submit(const chain::SignedTransaction& stx);
    /// Signs and queues a Mint from the producer key.
    chain::SubmitResult faucet(const Address& to, Wei amount);
    /// Produces and persists one block, possibly empty.
    chain::Block produce();
    std::size_t pending() const { return pool_.size(); }

    /// Runs `f(store)` under a shared lock.
    template <class F>
    auto read(F&& f) const
    {
        std::shared_lock lock(mutex_);
        return f(static_cast<const chain::ChainStore&>(store_));
    }
    std::uint64_t next_nonce(const Address& a) const;

    /// Starts interval production when block_interval_seconds > 0.
    void start();
    /// Stops the production thread and flushes the log.
    void stop();

private:
    void run_timer();

    NodeConfig config_;
    crypto::KeyPair producer_;
    chain::ChainParams params_;
    mutable std::shared_mutex mutex_;
    chain::ChainStore store_;
    chain::Mempool pool_;
    std::unique_ptr<chain::BlockLog> log_;
    std::mutex faucet_mutex_;

    std::mutex timer_mutex_;
    std::condition_variable timer_cv_;
    bool stopping_ = false;
    std::thread timer_;
};

}  // namespace pchain::node
