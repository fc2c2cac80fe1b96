#include <pchain/vm/state.hpp>

#include <pchain/common/errors.hpp>
#include <pchain/crypto/hash.hpp>

namespace pchain::vm {

std::string_view to_string(ProductStatus s)
{
    return s == ProductStatus::Shipped ? "Shipped" : "ReadyToGo";
}

std::string_view to_string(OrderStatus s)
{
    switch (s) {
    case OrderStatus::None: return "None";
    case OrderStatus::Pending: return "Pending";
    case OrderStatus::Complete: return "Complete";
    }
    return "None";
}

std::optional<ProductStatus> product_status_from_string(std::string_view s)
{
    if (s == "ReadyToGo") return ProductStatus::ReadyToGo;
    if (s == "Shipped") return ProductStatus::Shipped;
    return std::nullopt;
}

std::optional<OrderStatus> order_status_from_string(std::string_view s)
{
    if (s == "None") return OrderStatus::None;
    if (s == "Pending") return OrderStatus::Pending;
    if (s == "Complete") return OrderStatus::Complete;
    return std::nullopt;
}

Wei WorldState::balance_of(const Address& a) const
{
    auto it = balances.find(a);
    return it == balances.end() ? Wei{0} : it->second;
}

std::uint64_t WorldState::nonce_of(const Address& a) const
{
    auto it = nonces.find(a);
    return it == nonces.end() ? 0 : it->second;
}

const Company* WorldState::find_company(const Address& a) const
{
    auto it = companies.find(a);
    return it == companies.end() ? nullptr : &it->second;
}

Company* WorldState::find_company(const Address& a)
{
    auto it = companies.find(a);
    return it == companies.end() ? nullptr : &it->second;
}

Bytes canonical_state_bytes(const WorldState& state)
{
    ByteWriter out;
    out.u32(static_cast<std::uint32_t>(state.companies.size()));
    for (const auto& [addr, c] : state.companies) {
        out.raw(addr.bytes());
        out.str(c.name);
        out.raw(c.manufacturer.bytes());
        out.u128(c.min_registration_fee_wei);
        out.u32(static_cast<std::uint32_t>(c.sellers.size()));
        for (const auto& s : c.sellers) {
            out.raw(s.bytes());
            out.u8(1);
        }
        out.u64(c.products.size());
        for (const auto& p : c.products) {
            out.u64(p.id);
            out.str(p.name);
            out.u128(p.price_wei);
            out.u64(p.stock);
            out.u8(static_cast<std::uint8_t>(p.status));
            out.u8(static_cast<std::uint8_t>(p.order_status));
            out.str(p.owner_name);
            out.raw(p.owner_address.bytes());
        }
    }

    std::uint32_t nonzero = 0;
    for (const auto& [addr, bal] : state.balances) {
        if (bal != 0) ++nonzero;
    }
    out.u32(nonzero);
    for (const auto& [addr, bal] : state.balances) {
        if (bal == 0) continue;
        out.raw(addr.bytes());
        out.u128(bal);
    }
    return std::move(out).take();
}

Hash256 compute_state_root(const WorldState& state)
{
    return crypto::sha256(canonical_state_bytes(state));
}

Product query_product(const WorldState& state, const Address& company, std::uint64_t product_id)
{
    const auto* c = state.find_company(company);
    if (!c) throw Error(Errc::UnknownCompany, "no company at " + company.to_text());
    if (product_id >= c->products.size()) {
        throw Error(Errc::UnknownProduct, "company " + company.to_text() + " has no product " +
                                              std::to_string(product_id));
    }
    return c->products[product_id];
}

namespace {

CompanySummary summarize(const Company& c)
{
    return CompanySummary{c.contract_address, c.name,           c.manufacturer, c.min_registration_fee_wei,
                          c.sellers.size(),   c.products.size()};
}

}  // namespace

CompanySummary query_company(const WorldState& state, const Address& company)
{
    const auto* c = state.find_company(company);
    if (!c) throw Error(Errc::UnknownCompany, "no company at " + company.to_text());
    return summarize(*c);
}

std::vector<CompanySummary> list_companies(const WorldState& state)
{
    std::vector<CompanySummary> out;
    out.reserve(state.companies.size());
    for (const auto& [addr, c] : state.companies) out.push_back(summarize(c));
    return out;
}

}  // namespace pchain::vm
