#include <pchain/node/config.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <pchain/common/errors.hpp>

namespace pchain::node {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(const std::string& what)
{
    throw Error(Errc::ConfigInvalid, what);
}

std::uint64_t parse_u64(std::string_view key, std::string_view value)
{
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) invalid(std::string(key) + ": not an integer");
    return out;
}

bool parse_bool(std::string_view key, std::string_view value)
{
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    invalid(std::string(key) + ": expected true or false");
}

}  // namespace

void apply_listen(NodeConfig& config, std::string_view listen)
{
    std::string_view port = listen;
    const auto colon = listen.rfind(':');
    if (colon != std::string_view::npos) {
        config.host = std::string(listen.substr(0, colon));
        port = listen.substr(colon + 1);
    }
    const auto p = parse_u64("listen", port);
    if (p > 65535) invalid("listen: port out of range");
    config.port = static_cast<int>(p);
}

NodeConfig parse_config(std::string_view text, NodeConfig base)
{
    NodeConfig c = std::move(base);
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) invalid("line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (key == "listen") {
            apply_listen(c, value);
        } else if (key == "block_log") {
            c.block_log = std::string(value);
        } else if (key == "producer_seed") {
            const auto seed = fixed_from_hex<32>(value);
            if (!seed) invalid("producer_seed: expected 32 bytes of hex");
            c.producer_seed = *seed;
        } else if (key == "gas_price_wei") {
            const auto v = parse_wei(value);
            if (!v) invalid("gas_price_wei: not an integer");
            c.gas_price_wei = *v;
        } else if (key == "eth_usd_rate") {
            const auto v = parse_decimal_scaled(value, 6);
            if (!v) invalid("eth_usd_rate: not a decimal number");
            c.eth_usd_rate_micro = *v;
        } else if (key == "block_interval_seconds") {
            c.block_interval_seconds = parse_u64(key, value);
        } else if (key == "faucet_enabled") {
            c.faucet_enabled = parse_bool(key, value);
        } else {
            invalid("unknown key " + std::string(key));
        }
    }
    if (c.gas_price_wei < 1) invalid("gas_price_wei must be at least 1");
    if (c.eth_usd_rate_micro == 0) invalid("eth_usd_rate must be positive");
    return c;
}

NodeConfig config_from_environment()
{
    NodeConfig c;
    if (const char* path = std::getenv("PCHAIN_CONFIG"); path && *path) {
        std::ifstream in(path);
        if (!in) invalid(std::string("cannot read config file ") + path);
        std::stringstream ss;
        ss << in.rdbuf();
        c = parse_config(ss.str(), c);
    }
    if (const char* listen = std::getenv("PCHAIN_LISTEN"); listen && *listen) apply_listen(c, listen);
    return c;
}

}  // namespace pchain::node
