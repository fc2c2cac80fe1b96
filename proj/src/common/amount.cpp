#include <pchain/common/amount.hpp>

#include <algorithm>
#include <limits>

namespace pchain {

namespace {

Wei pow10(unsigned n)
{
    Wei r = 1;
    while (n-- > 0) r *= 10;
    return r;
}

}  // namespace

std::string wei_to_string(Wei value)
{
    if (value == 0) return "0";
    std::string out;
    while (value > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<Wei> parse_wei(std::string_view text)
{
    if (text.empty() || text.size() > 39) return std::nullopt;
    Wei v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
        auto next = checked_mul(v, 10);
        if (!next) return std::nullopt;
        next = checked_add(*next, static_cast<Wei>(c - '0'));
        if (!next) return std::nullopt;
        v = *next;
    }
    return v;
}

std::optional<Wei> checked_add(Wei a, Wei b)
{
    if (std::numeric_limits<Wei>::max() - a < b) return std::nullopt;
    return a + b;
}

std::optional<Wei> checked_mul(Wei a, Wei b)
{
    if (a == 0 || b == 0) return Wei{0};
    if (std::numeric_limits<Wei>::max() / a < b) return std::nullopt;
    return a * b;
}

std::string format_fixed(Wei value, unsigned scale, unsigned decimals)
{
    Wei units = value;
    if (decimals < scale) {
        const Wei div = pow10(scale - decimals);
        units = value / div;
        if (value % div >= div - div / 2) ++units;
    } else {
        units = value * pow10(decimals - scale);
    }
    const Wei unit = pow10(decimals);
    std::string out = wei_to_string(units / unit);
    if (decimals > 0) {
        std::string frac = wei_to_string(units % unit);
        out += '.';
        out.append(decimals - frac.size(), '0');
        out += frac;
    }
    return out;
}

std::optional<Wei> parse_decimal_scaled(std::string_view text, unsigned decimals)
{
    const auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (dot != std::string_view::npos && frac.empty()) return std::nullopt;

    Wei w = 0;
    if (!whole.empty()) {
        auto parsed = parse_wei(whole);
        if (!parsed) return std::nullopt;
        w = *parsed;
    }
    for (char c : frac) {
        if (c < '0' || c > '9') return std::nullopt;
    }
    std::string kept(frac.substr(0, std::min<std::size_t>(frac.size(), decimals)));
    kept.append(decimals - kept.size(), '0');
    Wei f = kept.empty() ? 0 : *parse_wei(kept);
    auto scaled = checked_mul(w, pow10(decimals));
    if (!scaled) return std::nullopt;
    auto total = checked_add(*scaled, f);
    if (!total) return std::nullopt;
    if (frac.size() > decimals && frac[decimals] >= '5') total = checked_add(*total, 1);
    return total;
}

}  // namespace pchain
