#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace pchain {

/// 20-byte account identifier, the first 20 bytes of SHA-256(public key).
/// Text form is "0x" + 40 lowercase hex digits.
class Address {
public:
    static constexpr std::size_t kSize = 20;
    using Storage = std::array<std::uint8_t, kSize>;

    Address() = default;
    explicit Address(const Storage& bytes) : bytes_(bytes) {}

    /// Exactly "0x" + 40 hex digits; either case accepted.
    static std::optional<Address> from_text(std::string_view text);

    const Storage& bytes() const { return bytes_; }
    std::string to_text() const;
    bool is_zero() const;

    auto operator<=>(const Address&) const = default;

private:
    Storage bytes_{};
};

}  // namespace pchain

template <>
struct std::hash<pchain::Address> {
    std::size_t operator()(const pchain::Address& a) const noexcept
    {
        std::size_t h = 0;
        for (int i = 0; i < 8; ++i) h = (h << 8) | a.bytes()[i];
        return h;
    }
};
