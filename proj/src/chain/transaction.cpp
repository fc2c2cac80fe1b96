#include <pchain/chain/transaction.hpp>

#include <type_traits>

#include <pchain/common/errors.hpp>
#include <pchain/crypto/hash.hpp>

namespace pchain::chain {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void write_address(ByteWriter& out, const Address& a)
{
    out.raw(a.bytes());
}

Address read_address(ByteReader& in)
{
    return Address(in.fixed<Address::kSize>());
}

}  // namespace

ActionTag tag_of(const Action& action)
{
    return std::visit(overloaded{
                          [](const CreateCompany&) { return ActionTag::CreateCompany; },
                          [](const EnrollProduct&) { return ActionTag::EnrollProduct; },
                          [](const RegisterSeller&) { return ActionTag::RegisterSeller; },
                          [](const BuyProduct&) { return ActionTag::BuyProduct; },
                          [](const DistributeProduct&) { return ActionTag::DistributeProduct; },
                          [](const Transfer&) { return ActionTag::Transfer; },
                          [](const Mint&) { return ActionTag::Mint; },
                      },
                      action);
}

std::string_view action_name(ActionTag tag)
{
    switch (tag) {
    case ActionTag::CreateCompany: return "CreateCompany";
    case ActionTag::EnrollProduct: return "EnrollProduct";
    case ActionTag::RegisterSeller: return "RegisterSeller";
    case ActionTag::BuyProduct: return "BuyProduct";
    case ActionTag::DistributeProduct: return "DistributeProduct";
    case ActionTag::Transfer: return "Transfer";
    case ActionTag::Mint: return "Mint";
    }
    return "Unknown";
}

Bytes canonical_serialize(const Transaction& tx)
{
    ByteWriter out;
    write_address(out, tx.sender);
    out.u64(tx.nonce);
    out.u8(static_cast<std::uint8_t>(tag_of(tx.action)));
    std::visit(overloaded{
                   [&](const CreateCompany& a) {
                       out.str(a.name);
                       out.u128(a.min_fee_wei);
                   },
                   [&](const EnrollProduct& a) {
                       write_address(out, a.company);
                       out.str(a.name);
                       out.u128(a.price_wei);
                       out.u64(a.stock);
                   },
                   [&](const RegisterSeller& a) { write_address(out, a.company); },
                   [&](const BuyProduct& a) {
                       write_address(out, a.company);
                       out.u64(a.product_id);
                       out.str(a.seller_name);
                       out.u64(a.quantity);
                   },
                   [&](const DistributeProduct& a) {
                       write_address(out, a.company);
                       out.u64(a.product_id);
                   },
                   [&](const Transfer& a) { write_address(out, a.to); },
                   [&](const Mint& a) { write_address(out, a.to); },
               },
               tx.action);
    out.u128(tx.value_wei);
    return std::move(out).take();
}

Transaction deserialize_transaction(std::span<const std::uint8_t> bytes)
{
    ByteReader in(bytes);
    Transaction tx;
    tx.sender = read_address(in);
    tx.nonce = in.u64();
    const auto tag = in.u8();
    switch (static_cast<ActionTag>(tag)) {
    case ActionTag::CreateCompany: {
        CreateCompany a;
        a.name = in.str();
        a.min_fee_wei = in.u128();
        tx.action = std::move(a);
        break;
    }
    case ActionTag::EnrollProduct: {
        EnrollProduct a;
        a.company = read_address(in);
        a.name = in.str();
        a.price_wei = in.u128();
        a.stock = in.u64();
        tx.action = std::move(a);
        break;
    }
    case ActionTag::RegisterSeller:
        tx.action = RegisterSeller{read_address(in)};
        break;
    case ActionTag::BuyProduct: {
        BuyProduct a;
        a.company = read_address(in);
        a.product_id = in.u64();
        a.seller_name = in.str();
        a.quantity = in.u64();
        tx.action = std::move(a);
        break;
    }
    case ActionTag::DistributeProduct: {
        DistributeProduct a;
        a.company = read_address(in);
        a.product_id = in.u64();
        tx.action = a;
        break;
    }
    case ActionTag::Transfer:
        tx.action = Transfer{read_address(in)};
        break;
    case ActionTag::Mint:
        tx.action = Mint{read_address(in)};
        break;
    default:
        throw Error(Errc::Malformed, "unknown action tag " + std::to_string(tag));
    }
    tx.value_wei = in.u128();
    in.expect_done();
    return tx;
}

Hash256 transaction_hash(const Transaction& tx)
{
    return crypto::sha256(canonical_serialize(tx));
}

SignedTransaction sign_transaction(const Transaction& tx, const crypto::KeyPair& key)
{
    if (crypto::derive_address(key.public_key) != tx.sender) {
        throw Error(Errc::SenderKeyMismatch, "key address " + crypto::derive_address(key.public_key).to_text() +
                                                 " does not match sender " + tx.sender.to_text());
    }
    const auto preimage = canonical_serialize(tx);
    SignedTransaction stx;
    stx.tx = tx;
    stx.public_key = key.public_key;
    stx.signature = crypto::sign(key, preimage);
    stx.tx_hash = crypto::sha256(preimage);
    return stx;
}

bool verify_signature(const SignedTransaction& stx)
{
    if (crypto::derive_address(stx.public_key) != stx.tx.sender) return false;
    Bytes preimage;
    try {
        preimage = canonical_serialize(stx.tx);
    } catch (const Error&) {
        return false;
    }
    if (crypto::sha256(preimage) != stx.tx_hash) return false;
    return crypto::verify(stx.public_key, preimage, stx.signature);
}

void write_envelope(ByteWriter& out, const SignedTransaction& stx)
{
    const auto body = canonical_serialize(stx.tx);
    out.u32(static_cast<std::uint32_t>(body.size()));
    out.raw(body);
    out.raw(stx.public_key);
    out.raw(stx.signature);
}

SignedTransaction read_envelope(ByteReader& in)
{
    const auto len = in.u32();
    const auto body = in.raw(len);
    SignedTransaction stx;
    stx.tx = deserialize_transaction(body);
    stx.public_key = in.fixed<32>();
    stx.signature = in.fixed<64>();
    stx.tx_hash = crypto::sha256(body);
    return stx;
}

}  // namespace pchain::chain
