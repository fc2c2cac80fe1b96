#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <pchain/common/amount.hpp>

namespace pchain {

using Bytes = std::vector<std::uint8_t>;
using Hash256 = std::array<std::uint8_t, 32>;

/// Lowercase hex without prefix.
std::string to_hex(std::span<const std::uint8_t> bytes);
/// Lowercase hex with a "0x" prefix.
std::string to_hex_prefixed(std::span<const std::uint8_t> bytes);
/// Accepts an optional "0x" prefix and either letter case.
std::optional<Bytes> from_hex(std::string_view text);

template <std::size_t N>
std::optional<std::array<std::uint8_t, N>> fixed_from_hex(std::string_view text)
{
    auto bytes = from_hex(text);
    if (!bytes || bytes->size() != N) return std::nullopt;
    std::array<std::uint8_t, N> out{};
    std::copy(bytes->begin(), bytes->end(), out.begin());
    return out;
}

/// Big-endian, fixed-width writer used by every canonical encoding.
class ByteWriter {
public:
    static constexpr std::size_t kMaxStringBytes = 256;

    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void u128(Wei v);
    void raw(std::span<const std::uint8_t> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }
    /// u16 length prefix followed by the UTF-8 bytes. Throws FieldTooLong
    /// past kMaxStringBytes.
    void str(std::string_view s);

    const Bytes& bytes() const& { return buf_; }
    Bytes&& take() && { return std::move(buf_); }
    std::size_t size() const { return buf_.size(); }

private:
    Bytes buf_;
};

/// Reader counterpart of ByteWriter. Every accessor throws Error(Malformed)
/// on underrun, so callers can decode straight-line.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    Wei u128();
    std::string str();
    std::span<const std::uint8_t> raw(std::size_t n);

    template <std::size_t N>
    std::array<std::uint8_t, N> fixed()
    {
        auto s = raw(N);
        std::array<std::uint8_t, N> out{};
        std::copy(s.begin(), s.end(), out.begin());
        return out;
    }

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return pos_ == data_.size(); }
    void expect_done() const;

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace pchain
