#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include <pchain/common/amount.hpp>
#include <pchain/common/bytes.hpp>
#include <pchain/crypto/address.hpp>
#include <pchain/crypto/keys.hpp>

namespace pchain::chain {

enum class ActionTag : std::uint8_t {
    CreateCompany = 0x01,
    EnrollProduct = 0x02,
    RegisterSeller = 0x03,
    BuyProduct = 0x04,
    DistributeProduct = 0x05,
    Transfer = 0x06,
    Mint = 0x07,
};

struct CreateCompany {
    std::string name;
    Wei min_fee_wei = 0;
    bool operator==(const CreateCompany&) const = default;
};

struct EnrollProduct {
    Address company;
    std::string name;
    Wei price_wei = 0;
    std::uint64_t stock = 0;
    bool operator==(const EnrollProduct&) const = default;
};

struct RegisterSeller {
    Address company;
    bool operator==(const RegisterSeller&) const = default;
};

struct BuyProduct {
    Address company;
    std::uint64_t product_id = 0;
    std::string seller_name;
    std::uint64_t quantity = 0;
    bool operator==(const BuyProduct&) const = default;
};

struct DistributeProduct {
    Address company;
    std::uint64_t product_id = 0;
    bool operator==(const DistributeProduct&) const = default;
};

struct Transfer {
    Address to;
    bool operator==(const Transfer&) const = default;
};

// Faucet credit of value_wei to `to`; only the block producer may send it.
struct Mint {
    Address to;
    bool operator==(const Mint&) const = default;
};

using Action = std::variant<CreateCompany, EnrollProduct, RegisterSeller, BuyProduct, DistributeProduct, Transfer, Mint>;

ActionTag tag_of(const Action& action);
std::string_view action_name(ActionTag tag);

/// The signed preimage: sender, nonce, action and attached value.
struct Transaction {
    Address sender;
    std::uint64_t nonce = 0;
    Action action;
    Wei value_wei = 0;
    bool operator==(const Transaction&) const = default;
};

struct SignedTransaction {
    Transaction tx;
    crypto::PublicKey public_key{};
    crypto::Signature signature{};
    Hash256 tx_hash{};
    bool operator==(const SignedTransaction&) const = default;
};

/// Fixed field order: sender, nonce, action tag, action fields, value_wei.
/// Integers are big-endian fixed width, strings u16-length-prefixed UTF-8.
Bytes canonical_serialize(const Transaction& tx);
/// Inverse of canonical_serialize; rejects trailing bytes and unknown tags.
Transaction deserialize_transaction(std::span<const std::uint8_t> bytes);

Hash256 transaction_hash(const Transaction& tx);

/// Throws Error(SenderKeyMismatch) when the key does not own tx.sender.
SignedTransaction sign_transaction(const Transaction& tx, const crypto::KeyPair& key);

/// The public key hashes to the sender, the hash matches the preimage and
/// the signature verifies.
bool verify_signature(const SignedTransaction& stx);

/// Block-body framing: u32 length + canonical bytes, public key, signature.
void write_envelope(ByteWriter& out, const SignedTransaction& stx);
SignedTransaction read_envelope(ByteReader& in);

}  // namespace pchain::chain
