#include <pchain/node/node.hpp>

#include <chrono>
#include <ctime>

namespace pchain::node {

chain::ChainParams chain_params(const NodeConfig& config)
{
    chain::ChainParams p;
    p.gas.gas_price_wei = config.gas_price_wei;
    p.producer = crypto::derive_address(crypto::generate_keypair(config.producer_seed).public_key);
    return p;
}

Node::Node(NodeConfig config)
    : config_(std::move(config)), producer_(crypto::generate_keypair(config_.producer_seed)),
      params_(chain_params(config_)), store_(params_), pool_(params_, store_.state_ptr())
{
    if (!config_.block_log.empty()) {
        log_ = std::make_unique<chain::BlockLog>(config_.block_log, store_);
        pool_.on_block_committed(store_.state_ptr());
    }
}

Node::~Node()
{
    stop();
}

chain::SubmitResult Node::submit(const chain::SignedTransaction& stx)
{
    std::shared_lock lock(mutex_);
    return chain::submit(stx, store_, pool_);
}

chain::SubmitResult Node::faucet(const Address& to, Wei amount)
{
    std::lock_guard guard(faucet_mutex_);
    std::shared_lock lock(mutex_);
    chain::Transaction tx{params_.producer, pool_.next_nonce(params_.producer), chain::Mint{to}, amount};
    return chain::submit(chain::sign_transaction(tx, producer_), store_, pool_);
}

chain::Block Node::produce()
{
    std::unique_lock lock(mutex_);
    const auto now = static_cast<std::uint64_t>(std::time(nullptr));
    const chain::Block& block = chain::produce_block(store_, pool_, now);
    if (log_) log_->append(block);
    return block;
}

std::uint64_t Node::next_nonce(const Address& a) const
{
    std::shared_lock lock(mutex_);
    return pool_.next_nonce(a);
}

void Node::start()
{
    if (config_.block_interval_seconds == 0 || timer_.joinable()) return;
    stopping_ = false;
    timer_ = std::thread([this] { run_timer(); });
}

void Node::stop()
{
    {
        std::lock_guard guard(timer_mutex_);
        stopping_ = true;
    }
    timer_cv_.notify_all();
    if (timer_.joinable()) timer_.join();
}

void Node::run_timer()
{
    const auto interval = std::chrono::seconds(config_.block_interval_seconds);
    std::unique_lock guard(timer_mutex_);
    while (!timer_cv_.wait_for(guard, interval, [this] { return stopping_; })) {
        if (pool_.empty()) continue;
        guard.unlock();
        produce();
        guard.lock();
    }
}

}  // namespace pchain::node
