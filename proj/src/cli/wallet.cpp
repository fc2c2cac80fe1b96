#include <pchain/cli/wallet.hpp>

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

namespace pchain::cli {

void save_key(const std::filesystem::path& path, const crypto::Seed& seed, bool force)
{
    int flags = O_WRONLY | O_CREAT | O_CLOEXEC | (force ? O_TRUNC : O_EXCL);
    const int fd = ::open(path.c_str(), flags, 0600);
    if (fd < 0) {
        if (errno == EEXIST) throw std::runtime_error(path.string() + " already exists (use --force to overwrite)");
        throw std::runtime_error("cannot create " + path.string() + ": " + std::strerror(errno));
    }
    ::fchmod(fd, 0600);
    const std::string text = to_hex(seed) + "\n";
    const bool ok = ::write(fd, text.data(), text.size()) == static_cast<ssize_t>(text.size()) && ::fsync(fd) == 0;
    ::close(fd);
    if (!ok) throw std::runtime_error("cannot write " + path.string());
}

crypto::KeyPair load_key(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read keyfile " + path.string() + " (run keygen first)");
    std::string text;
    in >> text;
    const auto seed = fixed_from_hex<32>(text);
    if (!seed) throw std::runtime_error("keyfile " + path.string() + " does not hold a 32-byte hex seed");
    return crypto::generate_keypair(*seed);
}

bool key_file_too_open(const std::filesystem::path& path)
{
    struct stat st {};
    if (::stat(path.c_str(), &st) != 0) return false;
    return (st.st_mode & 077) != 0;
}

std::string TxOutcome::error() const
{
    if (!rejected.empty()) return rejected;
    if (!receipt) return "NotIncluded";
    const auto& e = (*receipt)["error"];
    return e.is_string() ? e.get<std::string>() : std::string{};
}

std::optional<json> wait_for_receipt(NodeClient& client, const Hash256& tx_hash, const SendOptions& options)
{
    const auto path = "/v1/receipts/" + to_hex_prefixed(tx_hash);
    const auto deadline = std::chrono::steady_clock::now() + options.receipt_timeout;
    auto delay = std::chrono::milliseconds(20);
    for (;;) {
        const auto r = client.get(path);
        if (r.ok()) return r.body;
        if (r.status != 404) throw TransportError("unexpected HTTP " + std::to_string(r.status) + " for " + path);
        if (std::chrono::steady_clock::now() >= deadline) return std::nullopt;
        std::this_thread::sleep_for(delay);
        delay = std::min(delay * 2, std::chrono::milliseconds(500));
    }
}

TxOutcome send_transaction(NodeClient& client, const crypto::KeyPair& key, chain::Action action, Wei value,
                           const SendOptions& options)
{
    const Address sender = crypto::derive_address(key.public_key);
    const auto account = client.get("/v1/accounts/" + sender.to_text());
    if (!account.ok()) throw TransportError("cannot read account: " + account.error());

    chain::Transaction tx{sender, node::get_u64(account.body, "next_nonce"), std::move(action), value};
    const auto stx = chain::sign_transaction(tx, key);

    TxOutcome out;
    out.tx_hash = stx.tx_hash;
    const auto r = client.post("/v1/tx", node::transaction_to_json(stx));
    if (!r.ok()) {
        out.rejected = r.error();
        return out;
    }
    if (options.produce) {
        const auto p = client.post("/v1/blocks/produce");
        if (!p.ok()) throw TransportError("block production failed: " + p.error());
    }
    out.receipt = wait_for_receipt(client, stx.tx_hash, options);
    return out;
}

}  // namespace pchain::cli
