#include <pchain/common/errors.hpp>

#include <array>
#include <utility>

namespace pchain {

namespace {

constexpr std::array<std::pair<Errc, std::string_view>, 30> kNames{{
    {Errc::None, "None"},
    {Errc::SeedInvalid, "SeedInvalid"},
    {Errc::KeyInvalid, "KeyInvalid"},
    {Errc::FieldTooLong, "FieldTooLong"},
    {Errc::Malformed, "Malformed"},
    {Errc::SenderKeyMismatch, "SenderKeyMismatch"},
    {Errc::BadSignature, "BadSignature"},
    {Errc::NonceGap, "NonceGap"},
    {Errc::InsufficientBalance, "InsufficientBalance"},
    {Errc::NameInvalid, "NameInvalid"},
    {Errc::Unauthorized, "Unauthorized"},
    {Errc::UnknownCompany, "UnknownCompany"},
    {Errc::UnknownProduct, "UnknownProduct"},
    {Errc::ZeroStock, "ZeroStock"},
    {Errc::AlreadyRegistered, "AlreadyRegistered"},
    {Errc::FeeTooLow, "FeeTooLow"},
    {Errc::NotRegisteredSeller, "NotRegisteredSeller"},
    {Errc::ValueTooLow, "ValueTooLow"},
    {Errc::InsufficientStock, "InsufficientStock"},
    {Errc::ZeroQuantity, "ZeroQuantity"},
    {Errc::AlreadySold, "AlreadySold"},
    {Errc::NoPendingOrder, "NoPendingOrder"},
    {Errc::UnexpectedValue, "UnexpectedValue"},
    {Errc::Overflow, "Overflow"},
    {Errc::BadPrefix, "BadPrefix"},
    {Errc::BadBase64, "BadBase64"},
    {Errc::ChecksumMismatch, "ChecksumMismatch"},
    {Errc::UnsupportedVersion, "UnsupportedVersion"},
    {Errc::CorruptLog, "CorruptLog"},
    {Errc::ConfigInvalid, "ConfigInvalid"},
}};

}  // namespace

std::string_view to_string(Errc code)
{
    for (const auto& [c, name] : kNames) {
        if (c == code) return name;
    }
    return "Unknown";
}

std::optional<Errc> errc_from_string(std::string_view name)
{
    for (const auto& [c, n] : kNames) {
        if (n == name) return c;
    }
    return std::nullopt;
}

}  // namespace pchain
