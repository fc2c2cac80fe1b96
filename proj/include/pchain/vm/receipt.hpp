#pragma once

#include <cstdint>
#include <optional>

#include <pchain/common/amount.hpp>
#include <pchain/common/bytes.hpp>
#include <pchain/common/errors.hpp>
#include <pchain/crypto/address.hpp>

namespace pchain::vm {

struct ExecutionReceipt {
    Hash256 tx_hash{};
    bool success = false;
    std::uint64_t gas_used = 0;
    // Always gas_used * gas_price_wei.
    Wei fee_wei = 0;
    Errc error = Errc::None;
    std::optional<Address> company;
    std::optional<std::uint64_t> product_id;

    bool operator==(const ExecutionReceipt&) const = default;
};

void write_receipt(ByteWriter& out, const ExecutionReceipt& r);
ExecutionReceipt read_receipt(ByteReader& in);

}  // namespace pchain::vm
