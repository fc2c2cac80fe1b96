#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <pchain/chain/block.hpp>
#include <pchain/chain/mempool.hpp>
#include <pchain/chain/params.hpp>
#include <pchain/vm/state.hpp>

namespace pchain::chain {

enum class ValidationFailure : std::uint8_t {
    None,
    GenesisMismatch,
    HeightMismatch,
    PrevHashMismatch,
    TimestampRegression,
    TooManyTransactions,
    BlockHashMismatch,
    BadSignature,
    NotExecutable,
    ReceiptMismatch,
    StateRootMismatch,
};

std::string_view to_string(ValidationFailure f);

struct ValidationResult {
    ValidationFailure failure = ValidationFailure::None;
    std::uint64_t height = 0;
    std::string detail;

    bool ok() const { return failure == ValidationFailure::None; }
    static ValidationResult valid() { return {}; }
};

struct ReceiptLocation {
    std::uint64_t height = 0;
    std::size_t index = 0;
};

/// Deploy pseudo-receipt: the contract deployment is charged once, at
/// genesis, without moving any balance.
vm::ExecutionReceipt deploy_receipt(const ChainParams& params);
Block make_genesis(const ChainParams& params);

/// The full chain plus its derived indexes. Each committed state is an
/// immutable snapshot shared with readers.
class ChainStore {
public:
    explicit ChainStore(ChainParams params);

    const ChainParams& params() const { return params_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& tip() const { return blocks_.back(); }
    std::uint64_t height() const { return blocks_.back().height; }

    const vm::WorldState& state() const { return *state_; }
    std::shared_ptr<const vm::WorldState> state_ptr() const { return state_; }

    std::optional<ReceiptLocation> find_receipt(const Hash256& tx_hash) const;
    const vm::ExecutionReceipt* receipt(const Hash256& tx_hash) const;
    /// Height of the last block that changed the product, if any.
    std::optional<std::uint64_t> product_updated_at(const Address& company, std::uint64_t product_id) const;

    /// Fully re-checks `block` against the tip and appends it.
    ValidationResult apply_block(const Block& block);

    /// Appends a block whose post-state the caller already computed.
    void append(Block block, std::shared_ptr<const vm::WorldState> post_state);

    /// Direct access for tamper tests; bypasses every check.
    std::vector<Block>& mutable_blocks_for_testing() { return blocks_; }

private:
    void index_block(const Block& block);

    ChainParams params_;
    std::vector<Block> blocks_;
    std::shared_ptr<const vm::WorldState> state_;
    std::map<Hash256, ReceiptLocation> receipts_;
    std::map<std::pair<Address, std::uint64_t>, std::uint64_t> product_updates_;
};

/// Re-checks `block` as the successor of `tip` on `pre_state`. On success
/// returns the post-state.
std::variant<ValidationResult, vm::WorldState> check_block(const Block& block, const Block& tip,
                                                           const vm::WorldState& pre_state,
                                                           const ChainParams& params);

/// Admits a transaction against the store's committed state.
SubmitResult submit(const SignedTransaction& stx, const ChainStore& store, Mempool& pool);

/// Executes up to kMaxBlockTransactions pending transactions in mempool
/// order and appends the resulting block. Transactions that can no longer
/// execute are dropped; failing calls are included with a failure receipt.
const Block& produce_block(ChainStore& store, Mempool& pool, std::uint64_t timestamp);

/// Recomputes every hash, link, signature, receipt and state root from
/// genesis and reports the first disagreeing height.
ValidationResult validate_chain(const ChainStore& store);

}  // namespace pchain::chain
