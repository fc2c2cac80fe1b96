#include <pchain/common/bytes.hpp>

#include <pchain/common/errors.hpp>

namespace pchain {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

std::string to_hex_prefixed(std::span<const std::uint8_t> bytes)
{
    return "0x" + to_hex(bytes);
}

std::optional<Bytes> from_hex(std::string_view text)
{
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.size() % 2 != 0) return std::nullopt;
    Bytes out;
    out.reserve(text.size() / 2);
    for (std::size_t i = 0; i < text.size(); i += 2) {
        const int hi = hex_value(text[i]);
        const int lo = hex_value(text[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

void ByteWriter::u16(std::uint16_t v)
{
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::u64(std::uint64_t v)
{
    for (int shift = 56; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::u128(Wei v)
{
    for (int shift = 120; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::str(std::string_view s)
{
    if (s.size() > kMaxStringBytes) {
        throw Error(Errc::FieldTooLong, "string field of " + std::to_string(s.size()) + " bytes exceeds " +
                                            std::to_string(kMaxStringBytes));
    }
    u16(static_cast<std::uint16_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
}

std::span<const std::uint8_t> ByteReader::raw(std::size_t n)
{
    if (remaining() < n) throw Error(Errc::Malformed, "unexpected end of input");
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
}

std::uint8_t ByteReader::u8()
{
    return raw(1)[0];
}

std::uint16_t ByteReader::u16()
{
    auto s = raw(2);
    return static_cast<std::uint16_t>((s[0] << 8) | s[1]);
}

std::uint32_t ByteReader::u32()
{
    std::uint32_t v = 0;
    for (auto b : raw(4)) v = (v << 8) | b;
    return v;
}

std::uint64_t ByteReader::u64()
{
    std::uint64_t v = 0;
    for (auto b : raw(8)) v = (v << 8) | b;
    return v;
}

Wei ByteReader::u128()
{
    Wei v = 0;
    for (auto b : raw(16)) v = (v << 8) | b;
    return v;
}

std::string ByteReader::str()
{
    const auto len = u16();
    if (len > ByteWriter::kMaxStringBytes) throw Error(Errc::FieldTooLong, "string field too long");
    auto s = raw(len);
    return std::string(s.begin(), s.end());
}

void ByteReader::expect_done() const
{
    if (!done()) throw Error(Errc::Malformed, std::to_string(remaining()) + " trailing bytes");
}

}  // namespace pchain
