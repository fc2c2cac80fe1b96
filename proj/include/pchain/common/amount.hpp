#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pchain {

/// Native currency amount. 1 ETH = 10^18 wei.
using Wei = unsigned __int128;

inline constexpr Wei kWeiPerGwei = 1'000'000'000;
inline constexpr Wei kWeiPerEth = kWeiPerGwei * kWeiPerGwei;

std::string wei_to_string(Wei value);
/// Decimal digits only, no sign and no separators.
std::optional<Wei> parse_wei(std::string_view text);

std::optional<Wei> checked_add(Wei a, Wei b);
std::optional<Wei> checked_mul(Wei a, Wei b);

/// Rounds value / 10^scale to `decimals` places, half away from zero, and
/// renders it as a plain decimal string ("0.001069").
std::string format_fixed(Wei value, unsigned scale, unsigned decimals);

/// format_fixed(fee, 18, decimals).
inline std::string format_eth(Wei wei, unsigned decimals = 6) { return format_fixed(wei, 18, decimals); }

/// Parses a non-negative decimal ("3106.72") into an integer scaled by
/// 10^decimals, rounding half up on excess digits.
std::optional<Wei> parse_decimal_scaled(std::string_view text, unsigned decimals);

}  // namespace pchain
