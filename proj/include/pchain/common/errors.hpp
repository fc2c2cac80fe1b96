#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pchain {

/// Every error code that can cross a module boundary. The textual names are
/// part of the HTTP and CLI surface and must stay stable.
enum class Errc : std::uint8_t {
    None = 0,
    // keys and encoding
    SeedInvalid,
    KeyInvalid,
    FieldTooLong,
    Malformed,
    SenderKeyMismatch,
    // admission
    BadSignature,
    NonceGap,
    InsufficientBalance,
    // contract
    NameInvalid,
    Unauthorized,
    UnknownCompany,
    UnknownProduct,
    ZeroStock,
    AlreadyRegistered,
    FeeTooLow,
    NotRegisteredSeller,
    ValueTooLow,
    InsufficientStock,
    ZeroQuantity,
    AlreadySold,
    NoPendingOrder,
    UnexpectedValue,
    Overflow,
    // provenance payloads
    BadPrefix,
    BadBase64,
    ChecksumMismatch,
    UnsupportedVersion,
    // persistence
    CorruptLog,
    // config
    ConfigInvalid,
};

std::string_view to_string(Errc code);
std::optional<Errc> errc_from_string(std::string_view name);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    explicit Error(Errc code) : Error(code, std::string(to_string(code))) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Thrown by the block log loader. Carries the height of the first record
/// that could not be accepted.
class CorruptLogError : public Error {
public:
    CorruptLogError(std::uint64_t height, const std::string& reason)
        : Error(Errc::CorruptLog, "CorruptLog(" + std::to_string(height) + "): " + reason),
          height_(height), reason_(reason) {}

    std::uint64_t height() const noexcept { return height_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::uint64_t height_;
    std::string reason_;
};

}  // namespace pchain
