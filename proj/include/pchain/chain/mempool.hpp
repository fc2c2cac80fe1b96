#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <pchain/chain/params.hpp>
#include <pchain/chain/transaction.hpp>
#include <pchain/common/errors.hpp>
#include <pchain/vm/state.hpp>

namespace pchain::chain {

struct SubmitResult {
    Errc error = Errc::None;
    Hash256 tx_hash{};

    bool accepted() const { return error == Errc::None; }
};

/// FIFO queue of admitted transactions. Admission is checked against the
/// committed state plus everything still pending from the same sender, so a
/// sender's queued nonces are always contiguous. Thread-safe.
class Mempool {
public:
    Mempool(ChainParams params, std::shared_ptr<const vm::WorldState> committed);

    SubmitResult submit(const SignedTransaction& stx);

    /// Removes up to `max` transactions from the front. Their reservations
    /// stay in force until the next on_block_committed.
    std::vector<SignedTransaction> take(std::size_t max);

    /// Re-bases admission on the new committed state and drops queued
    /// transactions that can no longer execute.
    void on_block_committed(std::shared_ptr<const vm::WorldState> committed);

    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::shared_ptr<const vm::WorldState> base() const;
    /// Next nonce for `sender` counting pending transactions.
    std::uint64_t next_nonce(const Address& sender) const;

private:
    struct Pending {
        std::uint64_t next_nonce = 0;
        Wei reserved = 0;
    };

    Errc admit(const SignedTransaction& stx, bool check_signature);

    ChainParams params_;
    mutable std::mutex mutex_;
    std::shared_ptr<const vm::WorldState> committed_;
    std::deque<SignedTransaction> queue_;
    std::map<Address, Pending> pending_;
};

}  // namespace pchain::chain
