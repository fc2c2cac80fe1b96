#include <pchain/chain/block.hpp>

#include <pchain/common/errors.hpp>
#include <pchain/crypto/hash.hpp>

namespace pchain::chain {

namespace {

void write_transactions(ByteWriter& out, const std::vector<SignedTransaction>& txs)
{
    out.u32(static_cast<std::uint32_t>(txs.size()));
    for (const auto& tx : txs) write_envelope(out, tx);
}

}  // namespace

Bytes transactions_bytes(const std::vector<SignedTransaction>& txs)
{
    ByteWriter out;
    write_transactions(out, txs);
    return std::move(out).take();
}

Hash256 transactions_hash(const std::vector<SignedTransaction>& txs)
{
    return crypto::sha256(transactions_bytes(txs));
}

Hash256 compute_block_hash(const Block& block)
{
    ByteWriter header;
    header.u64(block.height);
    header.raw(block.prev_hash);
    header.u64(block.timestamp);
    header.raw(transactions_hash(block.transactions));
    header.raw(block.state_root);
    return crypto::sha256(header.bytes());
}

Bytes serialize_block(const Block& block)
{
    ByteWriter out;
    out.u64(block.height);
    out.raw(block.prev_hash);
    out.u64(block.timestamp);
    write_transactions(out, block.transactions);
    out.u32(static_cast<std::uint32_t>(block.receipts.size()));
    for (const auto& r : block.receipts) vm::write_receipt(out, r);
    out.raw(block.state_root);
    out.raw(block.block_hash);
    return std::move(out).take();
}

Block deserialize_block(std::span<const std::uint8_t> bytes)
{
    ByteReader in(bytes);
    Block b;
    b.height = in.u64();
    b.prev_hash = in.fixed<32>();
    b.timestamp = in.u64();
    const auto tx_count = in.u32();
    if (tx_count > kMaxBlockTransactions) throw Error(Errc::Malformed, "too many transactions");
    b.transactions.reserve(tx_count);
    for (std::uint32_t i = 0; i < tx_count; ++i) b.transactions.push_back(read_envelope(in));
    const auto receipt_count = in.u32();
    if (receipt_count > kMaxBlockTransactions + 1) throw Error(Errc::Malformed, "too many receipts");
    b.receipts.reserve(receipt_count);
    for (std::uint32_t i = 0; i < receipt_count; ++i) b.receipts.push_back(vm::read_receipt(in));
    b.state_root = in.fixed<32>();
    b.block_hash = in.fixed<32>();
    in.expect_done();
    // Non-canonical encodings (e.g. padded values that decode identically)
    // are rejected so every byte of a record is load-bearing.
    if (serialize_block(b) != Bytes(bytes.begin(), bytes.end())) {
        throw Error(Errc::Malformed, "non-canonical block encoding");
    }
    return b;
}

}  // namespace pchain::chain
