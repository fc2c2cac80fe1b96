#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

#include <pchain/chain/transaction.hpp>
#include <pchain/cli/client.hpp>
#include <pchain/crypto/keys.hpp>

namespace pchain::cli {

/// Writes the seed as hex with mode 0600. Refuses to overwrite unless
/// `force`. Throws std::runtime_error.
void save_key(const std::filesystem::path& path, const crypto::Seed& seed, bool force);
/// Throws std::runtime_error on a missing or malformed keyfile.
crypto::KeyPair load_key(const std::filesystem::path& path);
/// True when group or other permission bits are set.
bool key_file_too_open(const std::filesystem::path& path);

struct TxOutcome {
    Hash256 tx_hash{};
    // Admission error code; empty when the node accepted the transaction.
    std::string rejected;
    // Set once the transaction is in a block.
    std::optional<json> receipt;

    bool succeeded() const { return rejected.empty() && receipt && (*receipt)["success"].get<bool>(); }
    /// Admission error or the receipt's failure code; empty on success.
    std::string error() const;
};

struct SendOptions {
    // Ask the node for a block right after submitting.
    bool produce = true;
    std::chrono::milliseconds receipt_timeout{30'000};
};

/// Signs with the account's next nonce, submits, and waits for the receipt.
TxOutcome send_transaction(NodeClient& client, const crypto::KeyPair& key, chain::Action action, Wei value,
                           const SendOptions& options = {});

/// Waits for a receipt; nullopt on timeout.
std::optional<json> wait_for_receipt(NodeClient& client, const Hash256& tx_hash, const SendOptions& options);

}  // namespace pchain::cli
