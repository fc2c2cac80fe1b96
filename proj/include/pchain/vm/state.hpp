#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <pchain/common/amount.hpp>
#include <pchain/common/bytes.hpp>
#include <pchain/crypto/address.hpp>

namespace pchain::vm {

enum class ProductStatus : std::uint8_t { ReadyToGo = 0, Shipped = 1 };
enum class OrderStatus : std::uint8_t { None = 0, Pending = 1, Complete = 2 };

std::string_view to_string(ProductStatus s);
std::string_view to_string(OrderStatus s);
std::optional<ProductStatus> product_status_from_string(std::string_view s);
std::optional<OrderStatus> order_status_from_string(std::string_view s);

struct Product {
    std::uint64_t id = 0;
    std::string name;
    Wei price_wei = 0;
    std::uint64_t stock = 0;
    ProductStatus status = ProductStatus::ReadyToGo;
    OrderStatus order_status = OrderStatus::None;
    std::string owner_name;
    Address owner_address;

    bool operator==(const Product&) const = default;
};

struct Company {
    Address contract_address;
    std::string name;
    Address manufacturer;
    Wei min_registration_fee_wei = 0;
    // Registered sellers; entries are never removed.
    std::set<Address> sellers;
    // Product id == index.
    std::vector<Product> products;

    bool is_registered(const Address& a) const { return sellers.contains(a); }
    bool operator==(const Company&) const = default;
};

/// Read-only view of a company without its seller registry.
struct CompanySummary {
    Address contract_address;
    std::string name;
    Address manufacturer;
    Wei min_registration_fee_wei = 0;
    std::uint64_t seller_count = 0;
    std::uint64_t product_count = 0;

    bool operator==(const CompanySummary&) const = default;
};

struct WorldState {
    std::map<Address, Company> companies;
    std::map<Address, Wei> balances;
    std::map<Address, std::uint64_t> nonces;

    Wei balance_of(const Address& a) const;
    std::uint64_t nonce_of(const Address& a) const;
    const Company* find_company(const Address& a) const;
    Company* find_company(const Address& a);

    bool operator==(const WorldState&) const = default;
};

/// Companies in address order (sellers sorted, products by id), then every
/// non-zero balance in address order. Nonces are not committed.
Bytes canonical_state_bytes(const WorldState& state);
Hash256 compute_state_root(const WorldState& state);

// Queries against committed state. They throw Error(UnknownCompany) or
// Error(UnknownProduct).
Product query_product(const WorldState& state, const Address& company, std::uint64_t product_id);
CompanySummary query_company(const WorldState& state, const Address& company);
std::vector<CompanySummary> list_companies(const WorldState& state);

}  // namespace pchain::vm
