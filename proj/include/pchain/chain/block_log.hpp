#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include <pchain/chain/chain_store.hpp>

namespace pchain::chain {

/// "PCHN" followed by the format version.
inline constexpr std::array<std::uint8_t, 5> kLogMagic{'P', 'C', 'H', 'N', 0x01};

/// Whole-log encoding: magic, then per block a u32 big-endian length and
/// the serialize_block bytes.
Bytes encode_log(const ChainStore& store);

/// Decodes and fully re-validates a log. Throws CorruptLogError with the
/// first height that could not be accepted.
ChainStore decode_log(std::span<const std::uint8_t> bytes, const ChainParams& params);

/// Writes the full log atomically (temporary file + rename).
void persist(const ChainStore& store, const std::filesystem::path& path);
ChainStore load(const std::filesystem::path& path, const ChainParams& params);

/// Append-only writer used by a running node. Each append is flushed and
/// fsync'ed before returning.
class BlockLog {
public:
    /// Creates the file with magic + genesis when missing; otherwise loads
    /// and validates it into `store`.
    BlockLog(std::filesystem::path path, ChainStore& store);
    ~BlockLog();

    BlockLog(const BlockLog&) = delete;
    BlockLog& operator=(const BlockLog&) = delete;

    void append(const Block& block);
    const std::filesystem::path& path() const { return path_; }

private:
    void write_all(std::span<const std::uint8_t> bytes);

    std::filesystem::path path_;
    int fd_ = -1;
};

}  // namespace pchain::chain
