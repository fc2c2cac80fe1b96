// Generated by tests/oracles/golden_oracle.py; do not edit by hand.
#pragma once

namespace golden {

inline constexpr const char* kPubkeySeedZero = "3b6a27bcceb6a42d62a3a8d02a6f0d73653215771de243a63ac048a18b59da29";
inline constexpr const char* kPubkeySeedOne = "8a88e3dd7409f195fd52db2d3cba5d72ca6709bf1d94121bf3748801b40f6f5c";
inline constexpr const char* kAddressSeedOne = "0x34750f98bd59fcfc946da45aaabe933be154a4b5";
inline constexpr const char* kAddressZeroKey = "0x66687aadf862bd776c8fc18b8e9f8e2008971485";
inline constexpr const char* kRegisterSellerBytes = "34750f98bd59fcfc946da45aaabe933be154a4b50000000000000007031111111111111111111111111111111111111111000000000000000000000000000f4240";
inline constexpr const char* kRegisterSellerHash = "013e6d34d9d620a7f92277bf302688365d9def2ddceac467fe9b8e1507605b03";
inline constexpr const char* kRegisterSellerSignature = "66a8696e5d73de28dfae8dfda78ce3673d7746992f1df6d25e493f4f0b45f5c0ac5708fdd896b179c6c2864a0547551481d53552fc1a7cdbeb1407d0b20dcd0a";
inline constexpr const char* kContractNonce0 = "0xd73844f7417d1c21e0c904fbf6bd617f9b4cbf83";
inline constexpr const char* kContractNonce1 = "0x424f9cc32f667195d96b68fb44f5d200cc8be943";
inline constexpr const char* kEmptyStateRoot = "af5570f5a1810b7af78caf4bc70a660f0df51e42baf91d4de5b2328de0e83dfc";
inline constexpr const char* kSmallStateRoot = "d93a5b7ab9c6b3ea01bc1b3984d3be48d190b2e1be1afcff96c368e9c142ae48";
inline constexpr const char* kQrPayloadText = "pcv1:Adc4RPdBfRwh4MkE-_a9YX-bTL-DAAAAAAAAAAA0dQ-YvVn8_JRtpFqqvpM74VSktSIiIiIiIiIiIiIiIiIiIiIiIiIiAARTaG9wAQIAAAAAAAAABf5rkxE";

}  // namespace golden
