#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include <pchain/chain/transaction.hpp>
#include <pchain/common/errors.hpp>
#include <pchain/vm/state.hpp>

namespace pchain::vm {

/// msg.sender / msg.value of the call being executed. `nonce` is the
/// sender's nonce for this transaction.
struct CallContext {
    Address sender;
    std::uint64_t nonce = 0;
    Wei value = 0;
};

/// Result of one contract call. On error the state is left untouched.
struct Outcome {
    Errc error = Errc::None;
    std::optional<Address> company;
    std::optional<std::uint64_t> product_id;

    bool ok() const { return error == Errc::None; }
    static Outcome fail(Errc e) { return Outcome{e, std::nullopt, std::nullopt}; }
};

inline constexpr std::size_t kMaxNameBytes = 64;

/// Non-empty, at most kMaxNameBytes, valid UTF-8.
bool valid_name(std::string_view name);

/// First 20 bytes of SHA-256(sender || nonce as 8-byte big-endian).
Address contract_address_for(const Address& sender, std::uint64_t nonce);

Outcome create_company(WorldState& state, const CallContext& ctx, std::string_view name, Wei min_fee_wei);
Outcome enroll_product(WorldState& state, const CallContext& ctx, const Address& company, std::string_view name,
                       Wei price_wei, std::uint64_t stock);
Outcome register_seller(WorldState& state, const CallContext& ctx, const Address& company);
Outcome buy_product(WorldState& state, const CallContext& ctx, const Address& company, std::uint64_t product_id,
                    std::string_view seller_name, std::uint64_t quantity);
Outcome distribute_product(WorldState& state, const CallContext& ctx, const Address& company,
                           std::uint64_t product_id);
Outcome transfer(WorldState& state, const CallContext& ctx, const Address& to);
Outcome mint(WorldState& state, const CallContext& ctx, const Address& to, const Address& producer);

/// Dispatches a transaction action to the matching contract call.
Outcome apply_action(WorldState& state, const CallContext& ctx, const chain::Action& action,
                     const Address& producer);

}  // namespace pchain::vm
