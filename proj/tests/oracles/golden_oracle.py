#!/usr/bin/env python3
"""Independent reference encoder for the pchain byte formats.

Written against the format description in README.md, without reusing the
C++ code. Emits tests/golden_vectors.hpp; `--check FILE` diffs against a
committed copy instead.
"""
import base64
import hashlib
import struct
import sys

from cryptography.hazmat.primitives.asymmetric.ed25519 import Ed25519PrivateKey
from cryptography.hazmat.primitives import serialization


def sha256(b):
    return hashlib.sha256(b).digest()


def pubkey(seed):
    sk = Ed25519PrivateKey.from_private_bytes(seed)
    return sk.public_key().public_bytes(serialization.Encoding.Raw,
                                        serialization.PublicFormat.Raw)


def sign(seed, msg):
    return Ed25519PrivateKey.from_private_bytes(seed).sign(msg)


def address(pk):
    return sha256(pk)[:20]


def u8(v):
    return struct.pack(">B", v)


def u16(v):
    return struct.pack(">H", v)


def u32(v):
    return struct.pack(">I", v)


def u64(v):
    return struct.pack(">Q", v)


def u128(v):
    return v.to_bytes(16, "big")


def text(s):
    b = s.encode("utf-8")
    assert len(b) <= 256
    return u16(len(b)) + b


def register_seller_tx(sender, nonce, company, value):
    return sender + u64(nonce) + u8(0x03) + company + u128(value)


def state_bytes(companies, balances):
    out = u32(len(companies))
    for c in sorted(companies, key=lambda c: c["address"]):
        out += c["address"] + text(c["name"]) + c["manufacturer"] + u128(c["min_fee"])
        sellers = sorted(c["sellers"])
        out += u32(len(sellers))
        for s in sellers:
            out += s + u8(1)
        out += u64(len(c["products"]))
        for p in c["products"]:
            out += (u64(p["id"]) + text(p["name"]) + u128(p["price"]) + u64(p["stock"])
                    + u8(p["status"]) + u8(p["order"]) + text(p["owner_name"]) + p["owner"])
    nonzero = sorted((a, v) for a, v in balances.items() if v != 0)
    out += u32(len(nonzero))
    for a, v in nonzero:
        out += a + u128(v)
    return out


def qr_payload(company, pid, manufacturer, owner, owner_name, status, order, height):
    body = (u8(1) + company + u64(pid) + manufacturer + owner + text(owner_name)
            + u8(status) + u8(order) + u64(height))
    body += sha256(body)[:4]
    return "pcv1:" + base64.urlsafe_b64encode(body).decode().rstrip("=")


def hexs(b):
    return b.hex()


def main():
    seed_zero = bytes(32)
    seed_one = bytes([1] * 32)
    pk_zero = pubkey(seed_zero)
    pk_one = pubkey(seed_one)
    addr_one = address(pk_one)
    addr_zero_key = address(bytes(32))

    company = bytes([0x11] * 20)
    tx = register_seller_tx(addr_one, 7, company, 1_000_000)
    tx_sig = sign(seed_one, tx)

    contract0 = sha256(addr_one + u64(0))[:20]
    contract1 = sha256(addr_one + u64(1))[:20]

    empty_root = sha256(state_bytes([], {}))

    seller = bytes([0x22] * 20)
    seller_b = bytes([0x05] * 20)
    state = [{
        "address": contract0, "name": "Acme", "manufacturer": addr_one,
        "min_fee": 1_000_000, "sellers": [seller, seller_b],
        "products": [{"id": 0, "name": "Watch", "price": 5 * 10**16, "stock": 9,
                      "status": 1, "order": 2, "owner_name": "Shop", "owner": seller}],
    }]
    balances = {addr_one: 10**18, seller: 42, bytes([0x33] * 20): 0}
    small_root = sha256(state_bytes(state, balances))

    qr = qr_payload(contract0, 0, addr_one, seller, "Shop", 1, 2, 5)

    lines = [
        "// Generated by tests/oracles/golden_oracle.py; do not edit by hand.",
        "#pragma once",
        "",
        "namespace golden {",
        "",
        f'inline constexpr const char* kPubkeySeedZero = "{hexs(pk_zero)}";',
        f'inline constexpr const char* kPubkeySeedOne = "{hexs(pk_one)}";',
        f'inline constexpr const char* kAddressSeedOne = "0x{hexs(addr_one)}";',
        f'inline constexpr const char* kAddressZeroKey = "0x{hexs(addr_zero_key)}";',
        f'inline constexpr const char* kRegisterSellerBytes = "{hexs(tx)}";',
        f'inline constexpr const char* kRegisterSellerHash = "{hexs(sha256(tx))}";',
        f'inline constexpr const char* kRegisterSellerSignature = "{hexs(tx_sig)}";',
        f'inline constexpr const char* kContractNonce0 = "0x{hexs(contract0)}";',
        f'inline constexpr const char* kContractNonce1 = "0x{hexs(contract1)}";',
        f'inline constexpr const char* kEmptyStateRoot = "{hexs(empty_root)}";',
        f'inline constexpr const char* kSmallStateRoot = "{hexs(small_root)}";',
        f'inline constexpr const char* kQrPayloadText = "{qr}";',
        "",
        "}  // namespace golden",
        "",
    ]
    generated = "\n".join(lines)

    if len(sys.argv) == 3 and sys.argv[1] == "--check":
        with open(sys.argv[2]) as f:
            committed = f.read()
        if committed != generated:
            sys.stderr.write("golden vectors differ from oracle output\n")
            return 1
        print("golden vectors match oracle")
        return 0
    sys.stdout.write(generated)
    return 0


if __name__ == "__main__":
    sys.exit(main())
