#include <pchain/vm/receipt.hpp>

namespace pchain::vm {

void write_receipt(ByteWriter& out, const ExecutionReceipt& r)
{
    out.raw(r.tx_hash);
    out.u8(r.success ? 1 : 0);
    out.u64(r.gas_used);
    out.u128(r.fee_wei);
    out.u8(static_cast<std::uint8_t>(r.error));
    out.u8(r.company ? 1 : 0);
    if (r.company) out.raw(r.company->bytes());
    out.u8(r.product_id ? 1 : 0);
    if (r.product_id) out.u64(*r.product_id);
}

namespace {

bool read_flag(ByteReader& in)
{
    const auto v = in.u8();
    if (v > 1) throw Error(Errc::Malformed, "flag byte out of range");
    return v == 1;
}

}  // namespace

ExecutionReceipt read_receipt(ByteReader& in)
{
    ExecutionReceipt r;
    r.tx_hash = in.fixed<32>();
    r.success = read_flag(in);
    r.gas_used = in.u64();
    r.fee_wei = in.u128();
    r.error = static_cast<Errc>(in.u8());
    if (to_string(r.error) == "Unknown") throw Error(Errc::Malformed, "unknown error code in receipt");
    if (read_flag(in)) r.company = Address(in.fixed<Address::kSize>());
    if (read_flag(in)) r.product_id = in.u64();
    return r;
}

}  // namespace pchain::vm
