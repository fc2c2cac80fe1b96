#include <pchain/chain/mempool.hpp>

#include <pchain/chain/executor.hpp>

namespace pchain::chain {

Mempool::Mempool(ChainParams params, std::shared_ptr<const vm::WorldState> committed)
    : params_(std::move(params)), committed_(std::move(committed))
{
}

Errc Mempool::admit(const SignedTransaction& stx, bool check_signature)
{
    if (check_signature && !verify_signature(stx)) return Errc::BadSignature;
    const Transaction& tx = stx.tx;
    if (std::holds_alternative<Mint>(tx.action) && tx.sender != params_.producer) return Errc::Unauthorized;

    auto it = pending_.find(tx.sender);
    const std::uint64_t expected = it != pending_.end() ? it->second.next_nonce : committed_->nonce_of(tx.sender);
    if (tx.nonce != expected || tx.nonce == UINT64_MAX) return Errc::NonceGap;

    const Wei reserved = it != pending_.end() ? it->second.reserved : 0;
    const auto cost = max_cost(tx, params_.gas);
    const auto total = cost ? checked_add(reserved, *cost) : std::nullopt;
    if (!total || committed_->balance_of(tx.sender) < *total) return Errc::InsufficientBalance;

    auto& p = pending_[tx.sender];
    p.next_nonce = tx.nonce + 1;
    p.reserved = *total;
    return Errc::None;
}

SubmitResult Mempool::submit(const SignedTransaction& stx)
{
    std::lock_guard lock(mutex_);
    SubmitResult result{admit(stx, true), stx.tx_hash};
    if (result.accepted()) queue_.push_back(stx);
    return result;
}

std::vector<SignedTransaction> Mempool::take(std::size_t max)
{
    std::lock_guard lock(mutex_);
    std::vector<SignedTransaction> out;
    while (!queue_.empty() && out.size() < max) {
        out.push_back(std::move(queue_.front()));
        queue_.pop_front();
    }
    return out;
}

void Mempool::on_block_committed(std::shared_ptr<const vm::WorldState> committed)
{
    std::lock_guard lock(mutex_);
    committed_ = std::move(committed);
    pending_.clear();
    std::deque<SignedTransaction> kept;
    for (auto& stx : queue_) {
        if (admit(stx, false) == Errc::None) kept.push_back(std::move(stx));
    }
    queue_ = std::move(kept);
}

std::size_t Mempool::size() const
{
    std::lock_guard lock(mutex_);
    return queue_.size();
}

std::shared_ptr<const vm::WorldState> Mempool::base() const
{
    std::lock_guard lock(mutex_);
    return committed_;
}

std::uint64_t Mempool::next_nonce(const Address& sender) const
{
    std::lock_guard lock(mutex_);
    auto it = pending_.find(sender);
    return it != pending_.end() ? it->second.next_nonce : committed_->nonce_of(sender);
}

}  // namespace pchain::chain
