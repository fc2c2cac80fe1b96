#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <pchain/chain/transaction.hpp>
#include <pchain/vm/receipt.hpp>

namespace pchain::chain {

inline constexpr std::size_t kMaxBlockTransactions = 100;

struct Block {
    std::uint64_t height = 0;
    Hash256 prev_hash{};
    std::uint64_t timestamp = 0;
    std::vector<SignedTransaction> transactions;
    std::vector<vm::ExecutionReceipt> receipts;
    Hash256 state_root{};
    Hash256 block_hash{};

    bool operator==(const Block&) const = default;
};

/// u32 count followed by one envelope per transaction.
Bytes transactions_bytes(const std::vector<SignedTransaction>& txs);
Hash256 transactions_hash(const std::vector<SignedTransaction>& txs);

/// SHA-256 over height, prev_hash, timestamp, transaction-list hash and
/// state_root.
Hash256 compute_block_hash(const Block& block);

/// Full record: header fields, transactions, receipts, state_root,
/// block_hash.
Bytes serialize_block(const Block& block);
/// Strict inverse of serialize_block; throws Error(Malformed).
Block deserialize_block(std::span<const std::uint8_t> bytes);

}  // namespace pchain::chain
