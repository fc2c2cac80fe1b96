#include <pchain/qr/payload.hpp>

#include <sodium.h>

#include <pchain/chain/chain_store.hpp>
#include <pchain/common/errors.hpp>
#include <pchain/crypto/hash.hpp>
#include <pchain/vm/contract.hpp>

namespace pchain::qr {

namespace {

constexpr int kBase64Variant = sodium_base64_VARIANT_URLSAFE_NO_PADDING;

std::string base64url_encode(std::span<const std::uint8_t> bytes)
{
    std::string out(sodium_base64_encoded_len(bytes.size(), kBase64Variant), '\0');
    sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), kBase64Variant);
    out.resize(std::char_traits<char>::length(out.c_str()));
    return out;
}

std::optional<Bytes> base64url_decode(std::string_view text)
{
    Bytes out(text.size() * 3 / 4 + 3);
    std::size_t len = 0;
    const char* end = nullptr;
    // libsodium rejects non-zero trailing bits, so each text has exactly one
    // decoding.
    if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end, kBase64Variant) !=
            0 ||
        end != text.data() + text.size()) {
        return std::nullopt;
    }
    out.resize(len);
    return out;
}

Checksum checksum_of(std::span<const std::uint8_t> body)
{
    const auto digest = crypto::sha256(body);
    Checksum c{};
    std::copy_n(digest.begin(), c.size(), c.begin());
    return c;
}

}  // namespace

Bytes payload_body(const QRPayload& p)
{
    ByteWriter out;
    out.u8(p.version);
    out.raw(p.company.bytes());
    out.u64(p.product_id);
    out.raw(p.manufacturer.bytes());
    out.raw(p.owner_address.bytes());
    out.str(p.owner_name);
    out.u8(static_cast<std::uint8_t>(p.status));
    out.u8(static_cast<std::uint8_t>(p.order_status));
    out.u64(p.issued_at_height);
    return std::move(out).take();
}

Checksum compute_checksum(const QRPayload& p)
{
    return checksum_of(payload_body(p));
}

void seal(QRPayload& p)
{
    p.checksum = compute_checksum(p);
}

QRPayload make_payload(const vm::WorldState& state, std::uint64_t tip_height, const Address& company,
                       std::uint64_t product_id)
{
    const auto product = vm::query_product(state, company, product_id);
    const auto* c = state.find_company(company);
    QRPayload p;
    p.company = company;
    p.product_id = product_id;
    p.manufacturer = c->manufacturer;
    p.owner_address = product.owner_address;
    p.owner_name = product.owner_name;
    p.status = product.status;
    p.order_status = product.order_status;
    p.issued_at_height = tip_height;
    seal(p);
    return p;
}

QRPayload issue_payload(const chain::ChainStore& store, const Address& company, std::uint64_t product_id)
{
    return make_payload(store.state(), store.height(), company, product_id);
}

std::string encode_text(const QRPayload& p)
{
    auto bytes = payload_body(p);
    bytes.insert(bytes.end(), p.checksum.begin(), p.checksum.end());
    return std::string(kScheme) + base64url_encode(bytes);
}

QRPayload decode_text(std::string_view text)
{
    if (!text.starts_with(kScheme)) {
        // "pcv<digits>:" is a well-formed scheme of another version.
        if (text.starts_with("pcv")) {
            const auto colon = text.find(':');
            if (colon != std::string_view::npos && colon > 3) {
                const auto digits = text.substr(3, colon - 3);
                if (digits.find_first_not_of("0123456789") == std::string_view::npos) {
                    throw Error(Errc::UnsupportedVersion, "unsupported payload scheme " + std::string(text.substr(0, colon + 1)));
                }
            }
        }
        throw Error(Errc::BadPrefix, "payload must start with pcv1:");
    }
    const auto bytes = base64url_decode(text.substr(kScheme.size()));
    if (!bytes) throw Error(Errc::BadBase64, "payload body is not canonical base64url");
    if (bytes->size() < 5) throw Error(Errc::Malformed, "payload too short");

    const std::span<const std::uint8_t> body(bytes->data(), bytes->size() - 4);
    Checksum stored{};
    std::copy(bytes->end() - 4, bytes->end(), stored.begin());
    if (checksum_of(body) != stored) throw Error(Errc::ChecksumMismatch, "payload checksum mismatch");

    ByteReader in(body);
    QRPayload p;
    p.version = in.u8();
    if (p.version != kPayloadVersion) {
        throw Error(Errc::UnsupportedVersion, "payload version " + std::to_string(p.version));
    }
    p.company = Address(in.fixed<Address::kSize>());
    p.product_id = in.u64();
    p.manufacturer = Address(in.fixed<Address::kSize>());
    p.owner_address = Address(in.fixed<Address::kSize>());
    p.owner_name = in.str();
    if (p.owner_name.size() > vm::kMaxNameBytes) throw Error(Errc::Malformed, "owner name too long");
    const auto status = in.u8();
    const auto order = in.u8();
    if (status > 1 || order > 2) throw Error(Errc::Malformed, "status out of range");
    p.status = static_cast<vm::ProductStatus>(status);
    p.order_status = static_cast<vm::OrderStatus>(order);
    p.issued_at_height = in.u64();
    in.expect_done();
    p.checksum = stored;
    return p;
}

std::string_view to_string(UnknownReason r)
{
    switch (r) {
    case UnknownReason::None: return "None";
    case UnknownReason::UnknownCompany: return "UnknownCompany";
    case UnknownReason::UnknownProduct: return "UnknownProduct";
    case UnknownReason::NotYetShipped: return "NotYetShipped";
    }
    return "None";
}

std::string_view to_string(Verdict::Kind k)
{
    switch (k) {
    case Verdict::Kind::Genuine: return "Genuine";
    case Verdict::Kind::Mismatch: return "Mismatch";
    case Verdict::Kind::Unknown: return "Unknown";
    }
    return "Unknown";
}

Verdict verify(const QRPayload& p, const vm::WorldState& state, std::uint64_t tip_height,
               std::optional<std::uint64_t> updated_at)
{
    const auto* c = state.find_company(p.company);
    if (!c) return Verdict{Verdict::Kind::Unknown, {}, UnknownReason::UnknownCompany};
    if (p.product_id >= c->products.size()) return Verdict{Verdict::Kind::Unknown, {}, UnknownReason::UnknownProduct};
    const auto& product = c->products[p.product_id];

    std::vector<std::string> diff;
    if (p.manufacturer != c->manufacturer) diff.emplace_back("manufacturer");
    if (p.owner_address != product.owner_address) diff.emplace_back("owner_address");
    if (p.owner_name != product.owner_name) diff.emplace_back("owner_name");
    if (p.status != product.status) diff.emplace_back("status");
    if (p.order_status != product.order_status) diff.emplace_back("order_status");
    if (p.issued_at_height > tip_height || (updated_at && p.issued_at_height < *updated_at)) {
        diff.emplace_back("issued_at_height");
    }
    if (!diff.empty()) return Verdict{Verdict::Kind::Mismatch, std::move(diff), UnknownReason::None};

    if (product.status == vm::ProductStatus::Shipped && product.order_status == vm::OrderStatus::Complete) {
        return Verdict{Verdict::Kind::Genuine, {}, UnknownReason::None};
    }
    return Verdict{Verdict::Kind::Unknown, {}, UnknownReason::NotYetShipped};
}

Verdict verify(const QRPayload& p, const chain::ChainStore& store)
{
    return verify(p, store.state(), store.height(), store.product_updated_at(p.company, p.product_id));
}

}  // namespace pchain::qr
