#include <pchain/chain/chain_store.hpp>

#include <pchain/chain/executor.hpp>

namespace pchain::chain {

std::string_view to_string(ValidationFailure f)
{
    switch (f) {
    case ValidationFailure::None: return "ok";
    case ValidationFailure::GenesisMismatch: return "genesis mismatch";
    case ValidationFailure::HeightMismatch: return "height mismatch";
    case ValidationFailure::PrevHashMismatch: return "prev_hash mismatch";
    case ValidationFailure::TimestampRegression: return "timestamp regression";
    case ValidationFailure::TooManyTransactions: return "too many transactions";
    case ValidationFailure::BlockHashMismatch: return "hash mismatch";
    case ValidationFailure::BadSignature: return "bad signature";
    case ValidationFailure::NotExecutable: return "transaction not executable";
    case ValidationFailure::ReceiptMismatch: return "receipt mismatch";
    case ValidationFailure::StateRootMismatch: return "state root mismatch";
    }
    return "unknown";
}

vm::ExecutionReceipt deploy_receipt(const ChainParams& params)
{
    vm::ExecutionReceipt r;
    r.success = true;
    r.gas_used = params.gas.deploy_system;
    r.fee_wei = params.gas.fee_for_gas(params.gas.deploy_system);
    return r;
}

Block make_genesis(const ChainParams& params)
{
    Block g;
    g.height = 0;
    g.timestamp = params.genesis_timestamp;
    g.receipts.push_back(deploy_receipt(params));
    g.state_root = vm::compute_state_root(vm::WorldState{});
    g.block_hash = compute_block_hash(g);
    return g;
}

ChainStore::ChainStore(ChainParams params)
    : params_(std::move(params)), state_(std::make_shared<const vm::WorldState>())
{
    blocks_.push_back(make_genesis(params_));
}

std::optional<ReceiptLocation> ChainStore::find_receipt(const Hash256& tx_hash) const
{
    auto it = receipts_.find(tx_hash);
    if (it == receipts_.end()) return std::nullopt;
    return it->second;
}

const vm::ExecutionReceipt* ChainStore::receipt(const Hash256& tx_hash) const
{
    auto loc = find_receipt(tx_hash);
    if (!loc) return nullptr;
    return &blocks_[loc->height].receipts[loc->index];
}

std::optional<std::uint64_t> ChainStore::product_updated_at(const Address& company, std::uint64_t product_id) const
{
    auto it = product_updates_.find({company, product_id});
    if (it == product_updates_.end()) return std::nullopt;
    return it->second;
}

void ChainStore::index_block(const Block& block)
{
    for (std::size_t i = 0; i < block.transactions.size(); ++i) {
        receipts_[block.transactions[i].tx_hash] = ReceiptLocation{block.height, i};
        const auto& r = block.receipts[i];
        if (r.success && r.company && r.product_id) product_updates_[{*r.company, *r.product_id}] = block.height;
    }
}

void ChainStore::append(Block block, std::shared_ptr<const vm::WorldState> post_state)
{
    blocks_.push_back(std::move(block));
    state_ = std::move(post_state);
    index_block(blocks_.back());
}

ValidationResult ChainStore::apply_block(const Block& block)
{
    auto checked = check_block(block, tip(), *state_, params_);
    if (auto* failed = std::get_if<ValidationResult>(&checked)) return *failed;
    append(block, std::make_shared<const vm::WorldState>(std::move(std::get<vm::WorldState>(checked))));
    return ValidationResult::valid();
}

std::variant<ValidationResult, vm::WorldState> check_block(const Block& block, const Block& tip,
                                                           const vm::WorldState& pre_state,
                                                           const ChainParams& params)
{
    auto fail = [&](ValidationFailure f, std::string detail = {}) {
        return ValidationResult{f, block.height, std::move(detail)};
    };
    if (block.height != tip.height + 1) {
        return ValidationResult{ValidationFailure::HeightMismatch, tip.height + 1,
                                "expected height " + std::to_string(tip.height + 1)};
    }
    if (block.prev_hash != tip.block_hash) return fail(ValidationFailure::PrevHashMismatch);
    if (block.timestamp < tip.timestamp) return fail(ValidationFailure::TimestampRegression);
    if (block.transactions.size() > kMaxBlockTransactions) return fail(ValidationFailure::TooManyTransactions);
    if (compute_block_hash(block) != block.block_hash) return fail(ValidationFailure::BlockHashMismatch);

    for (std::size_t i = 0; i < block.transactions.size(); ++i) {
        if (!verify_signature(block.transactions[i])) {
            return fail(ValidationFailure::BadSignature, "transaction " + std::to_string(i));
        }
    }

    vm::WorldState state = pre_state;
    std::vector<vm::ExecutionReceipt> receipts;
    receipts.reserve(block.transactions.size());
    for (std::size_t i = 0; i < block.transactions.size(); ++i) {
        auto r = execute_transaction(state, block.transactions[i], params);
        if (!r) return fail(ValidationFailure::NotExecutable, "transaction " + std::to_string(i));
        receipts.push_back(*r);
    }
    if (receipts != block.receipts) return fail(ValidationFailure::ReceiptMismatch);
    if (vm::compute_state_root(state) != block.state_root) return fail(ValidationFailure::StateRootMismatch);
    return state;
}

SubmitResult submit(const SignedTransaction& stx, const ChainStore& store, Mempool& pool)
{
    if (pool.base() != store.state_ptr()) pool.on_block_committed(store.state_ptr());
    return pool.submit(stx);
}

const Block& produce_block(ChainStore& store, Mempool& pool, std::uint64_t timestamp)
{
    if (pool.base() != store.state_ptr()) pool.on_block_committed(store.state_ptr());
    auto txs = pool.take(kMaxBlockTransactions);

    vm::WorldState state = store.state();
    Block block;
    block.height = store.height() + 1;
    block.prev_hash = store.tip().block_hash;
    block.timestamp = std::max(timestamp, store.tip().timestamp);
    for (auto& stx : txs) {
        auto r = execute_transaction(state, stx, store.params());
        if (!r) continue;
        block.transactions.push_back(std::move(stx));
        block.receipts.push_back(*r);
    }
    block.state_root = vm::compute_state_root(state);
    block.block_hash = compute_block_hash(block);

    store.append(std::move(block), std::make_shared<const vm::WorldState>(std::move(state)));
    pool.on_block_committed(store.state_ptr());
    return store.tip();
}

ValidationResult validate_chain(const ChainStore& store)
{
    const auto& blocks = store.blocks();
    if (blocks.empty() || blocks.front() != make_genesis(store.params())) {
        return ValidationResult{ValidationFailure::GenesisMismatch, 0, {}};
    }
    ChainStore replay(store.params());
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        auto r = replay.apply_block(blocks[i]);
        if (!r.ok()) return r;
    }
    return ValidationResult::valid();
}

}  // namespace pchain::chain
