#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <pchain/common/bytes.hpp>
#include <pchain/crypto/address.hpp>
#include <pchain/vm/state.hpp>

namespace pchain::chain {
class ChainStore;
}

namespace pchain::qr {

inline constexpr std::string_view kScheme = "pcv1:";
inline constexpr std::uint8_t kPayloadVersion = 1;

using Checksum = std::array<std::uint8_t, 4>;

/// Consumer-facing provenance claim carried by a product's QR symbol.
struct QRPayload {
    std::uint8_t version = kPayloadVersion;
    Address company;
    std::uint64_t product_id = 0;
    Address manufacturer;
    Address owner_address;
    std::string owner_name;
    vm::ProductStatus status = vm::ProductStatus::ReadyToGo;
    vm::OrderStatus order_status = vm::OrderStatus::None;
    std::uint64_t issued_at_height = 0;
    // First 4 bytes of SHA-256 over every preceding field.
    Checksum checksum{};

    bool operator==(const QRPayload&) const = default;
};

/// Canonical bytes of every field except the checksum.
Bytes payload_body(const QRPayload& p);
Checksum compute_checksum(const QRPayload& p);
/// Recomputes and stores the checksum.
void seal(QRPayload& p);

/// Snapshot of the product's current record, sealed. Throws
/// Error(UnknownCompany) / Error(UnknownProduct).
QRPayload make_payload(const vm::WorldState& state, std::uint64_t tip_height, const Address& company,
                       std::uint64_t product_id);
QRPayload issue_payload(const chain::ChainStore& store, const Address& company, std::uint64_t product_id);

/// "pcv1:" + unpadded base64url of body || checksum. The stored checksum is
/// emitted as-is.
std::string encode_text(const QRPayload& p);
/// Throws Error with BadPrefix, UnsupportedVersion, BadBase64,
/// ChecksumMismatch or Malformed.
QRPayload decode_text(std::string_view text);

enum class UnknownReason : std::uint8_t { None, UnknownCompany, UnknownProduct, NotYetShipped };
std::string_view to_string(UnknownReason r);

struct Verdict {
    enum class Kind : std::uint8_t { Genuine, Mismatch, Unknown };

    Kind kind = Kind::Unknown;
    // Payload fields that disagree with the chain (Mismatch only).
    std::vector<std::string> fields;
    UnknownReason reason = UnknownReason::None;

    bool genuine() const { return kind == Kind::Genuine; }
    bool operator==(const Verdict&) const = default;
};

std::string_view to_string(Verdict::Kind k);

/// Compares the payload with the live record. `updated_at` is the height
/// of the product's last change; a payload claiming an earlier issuance, or
/// one issued beyond the tip, is flagged on issued_at_height. All fields
/// matching yields Genuine only for (Shipped, Complete).
Verdict verify(const QRPayload& p, const vm::WorldState& state, std::uint64_t tip_height,
               std::optional<std::uint64_t> updated_at);
Verdict verify(const QRPayload& p, const chain::ChainStore& store);

}  // namespace pchain::qr
