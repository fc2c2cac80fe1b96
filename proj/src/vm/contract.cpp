#include <pchain/vm/contract.hpp>

#include <pchain/crypto/hash.hpp>

namespace pchain::vm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool valid_utf8(std::string_view s)
{
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xe0) == 0xc0) {
            len = 2;
            cp = c & 0x1f;
        } else if ((c & 0xf0) == 0xe0) {
            len = 3;
            cp = c & 0x0f;
        } else if ((c & 0xf8) == 0xf0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xc0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3f);
        }
        // Overlong forms, surrogates and out-of-range code points.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) return false;
        if (cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return false;
        i += len;
    }
    return true;
}

Errc check_payment(const WorldState& state, const Address& from, const Address& to, Wei amount)
{
    if (amount == 0) return Errc::None;
    if (state.balance_of(from) < amount) return Errc::InsufficientBalance;
    if (from != to && !checked_add(state.balance_of(to), amount)) return Errc::Overflow;
    return Errc::None;
}

void set_balance(WorldState& state, const Address& a, Wei value)
{
    if (value == 0) {
        state.balances.erase(a);
    } else {
        state.balances[a] = value;
    }
}

// Caller has already passed check_payment.
void move_value(WorldState& state, const Address& from, const Address& to, Wei amount)
{
    if (amount == 0 || from == to) return;
    set_balance(state, from, state.balance_of(from) - amount);
    set_balance(state, to, state.balance_of(to) + amount);
}

}  // namespace

bool valid_name(std::string_view name)
{
    return !name.empty() && name.size() <= kMaxNameBytes && valid_utf8(name);
}

Address contract_address_for(const Address& sender, std::uint64_t nonce)
{
    ByteWriter preimage;
    preimage.raw(sender.bytes());
    preimage.u64(nonce);
    const auto digest = crypto::sha256(preimage.bytes());
    Address::Storage bytes{};
    std::copy_n(digest.begin(), Address::kSize, bytes.begin());
    return Address(bytes);
}

Outcome create_company(WorldState& state, const CallContext& ctx, std::string_view name, Wei min_fee_wei)
{
    if (!valid_name(name)) return Outcome::fail(Errc::NameInvalid);
    if (ctx.value != 0) return Outcome::fail(Errc::UnexpectedValue);
    const Address addr = contract_address_for(ctx.sender, ctx.nonce);
    if (state.companies.contains(addr)) return Outcome::fail(Errc::Malformed);

    Company c;
    c.contract_address = addr;
    c.name = std::string(name);
    c.manufacturer = ctx.sender;
    c.min_registration_fee_wei = min_fee_wei;
    state.companies.emplace(addr, std::move(c));
    return Outcome{Errc::None, addr, std::nullopt};
}

Outcome enroll_product(WorldState& state, const CallContext& ctx, const Address& company, std::string_view name,
                       Wei price_wei, std::uint64_t stock)
{
    Company* c = state.find_company(company);
    if (!c) return Outcome::fail(Errc::UnknownCompany);
    if (ctx.sender != c->manufacturer) return Outcome::fail(Errc::Unauthorized);
    if (!valid_name(name)) return Outcome::fail(Errc::NameInvalid);
    if (stock == 0) return Outcome::fail(Errc::ZeroStock);
    if (ctx.value != 0) return Outcome::fail(Errc::UnexpectedValue);

    Product p;
    p.id = c->products.size();
    p.name = std::string(name);
    p.price_wei = price_wei;
    p.stock = stock;
    p.owner_name = c->name;
    p.owner_address = c->manufacturer;
    c->products.push_back(std::move(p));
    return Outcome{Errc::None, company, c->products.back().id};
}

Outcome register_seller(WorldState& state, const CallContext& ctx, const Address& company)
{
    Company* c = state.find_company(company);
    if (!c) return Outcome::fail(Errc::UnknownCompany);
    // A manufacturer buying its own stock would leave a Pending order owned
    // by the manufacturer.
    if (ctx.sender == c->manufacturer) return Outcome::fail(Errc::Unauthorized);
    if (c->is_registered(ctx.sender)) return Outcome::fail(Errc::AlreadyRegistered);
    if (ctx.value < c->min_registration_fee_wei) return Outcome::fail(Errc::FeeTooLow);
    if (auto e = check_payment(state, ctx.sender, c->manufacturer, ctx.value); e != Errc::None) {
        return Outcome::fail(e);
    }

    c->sellers.insert(ctx.sender);
    move_value(state, ctx.sender, c->manufacturer, ctx.value);
    return Outcome{Errc::None, company, std::nullopt};
}

Outcome buy_product(WorldState& state, const CallContext& ctx, const Address& company, std::uint64_t product_id,
                    std::string_view seller_name, std::uint64_t quantity)
{
    Company* c = state.find_company(company);
    if (!c) return Outcome::fail(Errc::UnknownCompany);
    if (product_id >= c->products.size()) return Outcome::fail(Errc::UnknownProduct);
    Product& p = c->products[product_id];

    if (!c->is_registered(ctx.sender)) return Outcome::fail(Errc::NotRegisteredSeller);
    // The required amount overflowing u128 means no attachable value covers it.
    const auto required = checked_mul(p.price_wei, quantity);
    if (!required || ctx.value < *required) return Outcome::fail(Errc::ValueTooLow);
    if (quantity == 0) return Outcome::fail(Errc::ZeroQuantity);
    if (quantity > p.stock) return Outcome::fail(Errc::InsufficientStock);
    if (p.order_status != OrderStatus::None) return Outcome::fail(Errc::AlreadySold);
    if (!valid_name(seller_name)) return Outcome::fail(Errc::NameInvalid);
    if (auto e = check_payment(state, ctx.sender, c->manufacturer, ctx.value); e != Errc::None) {
        return Outcome::fail(e);
    }

    p.owner_name = std::string(seller_name);
    p.owner_address = ctx.sender;
    p.order_status = OrderStatus::Pending;
    p.stock -= quantity;
    move_value(state, ctx.sender, c->manufacturer, ctx.value);
    return Outcome{Errc::None, company, product_id};
}

Outcome distribute_product(WorldState& state, const CallContext& ctx, const Address& company,
                           std::uint64_t product_id)
{
    Company* c = state.find_company(company);
    if (!c) return Outcome::fail(Errc::UnknownCompany);
    if (ctx.sender != c->manufacturer) return Outcome::fail(Errc::Unauthorized);
    if (product_id >= c->products.size()) return Outcome::fail(Errc::UnknownProduct);
    Product& p = c->products[product_id];
    if (p.order_status != OrderStatus::Pending) return Outcome::fail(Errc::NoPendingOrder);
    if (ctx.value != 0) return Outcome::fail(Errc::UnexpectedValue);

    p.status = ProductStatus::Shipped;
    p.order_status = OrderStatus::Complete;
    return Outcome{Errc::None, company, product_id};
}

Outcome transfer(WorldState& state, const CallContext& ctx, const Address& to)
{
    if (auto e = check_payment(state, ctx.sender, to, ctx.value); e != Errc::None) return Outcome::fail(e);
    move_value(state, ctx.sender, to, ctx.value);
    return Outcome{};
}

Outcome mint(WorldState& state, const CallContext& ctx, const Address& to, const Address& producer)
{
    if (ctx.sender != producer) return Outcome::fail(Errc::Unauthorized);
    const auto next = checked_add(state.balance_of(to), ctx.value);
    if (!next) return Outcome::fail(Errc::Overflow);
    set_balance(state, to, *next);
    return Outcome{};
}

Outcome apply_action(WorldState& state, const CallContext& ctx, const chain::Action& action,
                     const Address& producer)
{
    return std::visit(
        overloaded{
            [&](const chain::CreateCompany& a) { return create_company(state, ctx, a.name, a.min_fee_wei); },
            [&](const chain::EnrollProduct& a) {
                return enroll_product(state, ctx, a.company, a.name, a.price_wei, a.stock);
            },
            [&](const chain::RegisterSeller& a) { return register_seller(state, ctx, a.company); },
            [&](const chain::BuyProduct& a) {
                return buy_product(state, ctx, a.company, a.product_id, a.seller_name, a.quantity);
            },
            [&](const chain::DistributeProduct& a) {
                return distribute_product(state, ctx, a.company, a.product_id);
            },
            [&](const chain::Transfer& a) { return transfer(state, ctx, a.to); },
            [&](const chain::Mint& a) { return mint(state, ctx, a.to, producer); },
        },
        action);
}

}  // namespace pchain::vm
