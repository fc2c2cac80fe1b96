#include <pchain/cli/cli.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include <pchain/chain/block_log.hpp>
#include <pchain/cli/client.hpp>
#include <pchain/cli/scenario.hpp>
#include <pchain/cli/wallet.hpp>
#include <pchain/node/http_server.hpp>
#include <pchain/qr/image.hpp>
#include <pchain/qr/symbol.hpp>

namespace pchain::cli {

namespace {

struct Globals {
    std::string node_url;
    std::string key_path;
    std::string config_path;
    bool json = false;
    bool no_produce = false;
};

/// Reported with exit code 1.
struct Rejection {
    std::string code;
    std::string message;
};

std::string env_or(const char* name, const char* fallback)
{
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
}

Address parse_address(const std::string& text, const char* flag)
{
    const auto a = Address::from_text(text);
    if (!a) throw CLI::ValidationError(flag, "expected a 0x-prefixed 20-byte address");
    return *a;
}

Wei parse_amount(const std::string& text, const char* flag)
{
    const auto w = parse_wei(text);
    if (!w) throw CLI::ValidationError(flag, "expected a decimal amount of wei");
    return *w;
}

class Context {
public:
    Context(Globals g, std::ostream& out, std::ostream& err) : g_(std::move(g)), out_(out), err_(err) {}

    const Globals& globals() const { return g_; }
    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }

    NodeClient& client()
    {
        if (!client_) client_ = std::make_unique<NodeClient>(g_.node_url);
        return *client_;
    }

    crypto::KeyPair key()
    {
        if (key_file_too_open(g_.key_path)) {
            err_ << "warning: keyfile " << g_.key_path << " is readable by other users\n";
        }
        return load_key(g_.key_path);
    }

    node::NodeConfig config() const
    {
        if (g_.config_path.empty()) return node::config_from_environment();
        std::ifstream in(g_.config_path);
        if (!in) throw Error(Errc::ConfigInvalid, "cannot read config file " + g_.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        return node::parse_config(ss.str());
    }

    void print_json(const json& j) { out_ << j.dump(2) << "\n"; }

private:
    Globals g_;
    std::ostream& out_;
    std::ostream& err_;
    std::unique_ptr<NodeClient> client_;
};

json outcome_json(const TxOutcome& o)
{
    return json{
        {"tx_hash", to_hex_prefixed(o.tx_hash)},
        {"accepted", o.rejected.empty()},
        {"success", o.succeeded()},
        {"error", o.succeeded() ? json(nullptr) : json(o.error())},
        {"receipt", o.receipt ? *o.receipt : json(nullptr)},
    };
}

int report_outcome(Context& ctx, const TxOutcome& o, const std::string& what)
{
    if (ctx.globals().json) {
        ctx.print_json(outcome_json(o));
    } else if (!o.rejected.empty()) {
        ctx.out() << "rejected: " << o.rejected << "\n";
    } else if (!o.receipt) {
        ctx.out() << "submitted " << to_hex_prefixed(o.tx_hash) << " but it was not included in time\n";
    } else {
        const auto& r = *o.receipt;
        const auto fee = node::get_wei(r, "fee_wei");
        if (o.succeeded()) {
            ctx.out() << what << " ok\n";
        } else {
            ctx.out() << what << " failed: " << o.error() << "\n";
        }
        ctx.out() << "  tx       " << to_hex_prefixed(o.tx_hash) << "\n"
                  << "  block    " << r.value("block_height", 0) << "\n"
                  << "  gas      " << r["gas_used"].get<std::uint64_t>() << "\n"
                  << "  fee      " << format_eth(fee) << " ETH (" << wei_to_string(fee) << " wei)\n";
        if (r["company"].is_string()) ctx.out() << "  company  " << r["company"].get<std::string>() << "\n";
        if (r["product_id"].is_number()) ctx.out() << "  product  " << r["product_id"].get<std::uint64_t>() << "\n";
    }
    return o.succeeded() ? kExitOk : kExitRejected;
}

int transact(Context& ctx, chain::Action action, Wei value, const std::string& what)
{
    SendOptions opts;
    opts.produce = !ctx.globals().no_produce;
    const auto key = ctx.key();
    return report_outcome(ctx, send_transaction(ctx.client(), key, std::move(action), value, opts), what);
}

std::string pad(const std::string& s, std::size_t width, bool right = true)
{
    if (s.size() >= width) return s;
    return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

void print_cost_report(std::ostream& out, const json& report)
{
    out << pad("#", 2) << "  " << pad("Operation", 22, false) << pad("Gas", 10) << pad("Fee (ETH)", 12)
        << pad("Fee (USD)", 11) << pad("Ref (ETH)", 12) << pad("Ref (USD)", 11) << "\n";
    std::vector<std::string> notes;
    for (const auto& row : report["rows"]) {
        const bool noted = row["annotation"].is_string();
        out << pad(std::to_string(row["index"].get<int>()), 2) << "  "
            << pad(row["description"].get<std::string>(), 22, false)
            << pad(std::to_string(row["gas"].get<std::uint64_t>()), 10) << pad(row["fee_eth"].get<std::string>(), 12)
            << pad(row["fee_usd"].get<std::string>(), 11) << pad(row["reference_fee_eth"].get<std::string>(), 12)
            << pad(row["reference_fee_usd"].get<std::string>(), 11) << (noted ? " *" : "") << "\n";
        if (noted) notes.push_back(row["annotation"].get<std::string>());
    }
    const auto& t = report["totals"];
    out << "    " << pad("Total", 22, false) << pad(std::to_string(t["gas"].get<std::uint64_t>()), 10)
        << pad(t["fee_eth"].get<std::string>(), 12) << pad(t["fee_usd"].get<std::string>(), 11)
        << pad(t["reference_fee_eth"].get<std::string>(), 12) << pad(t["reference_fee_usd"].get<std::string>(), 11)
        << "\n";
    for (const auto& n : notes) out << "  * " << n << "\n";
    out << "gas price " << report["gas_price_wei"].get<std::string>() << " wei, " << report["eth_usd_rate"].get<std::string>()
        << " USD/ETH\n";
}

int print_verdict(Context& ctx, const json& v)
{
    const auto kind = v.value("verdict", "");
    if (ctx.globals().json) {
        ctx.print_json(v);
    } else if (kind == "Genuine") {
        ctx.out() << "GENUINE\n";
    } else if (kind == "Mismatch") {
        ctx.out() << "MISMATCH:";
        for (const auto& f : v["mismatched_fields"]) ctx.out() << " " << f.get<std::string>();
        ctx.out() << "\n";
    } else {
        ctx.out() << "UNKNOWN (" << (v["reason"].is_string() ? v["reason"].get<std::string>() : "") << ")\n";
    }
    if (!ctx.globals().json && v.contains("chain") && v["chain"].is_object()) {
        const auto& c = v["chain"];
        ctx.out() << "  product       " << c["name"].get<std::string>() << " (#" << c["id"].get<std::uint64_t>() << ")\n"
                  << "  manufacturer  " << c["manufacturer"].get<std::string>() << "\n"
                  << "  owner         " << c["owner_name"].get<std::string>() << " " << c["owner_address"].get<std::string>() << "\n"
                  << "  status        " << c["status"].get<std::string>() << " / " << c["order_status"].get<std::string>() << "\n";
    }
    return kind == "Genuine" ? kExitOk : kExitRejected;
}

void print_scenario(std::ostream& out, const ScenarioResult& r)
{
    out << "manufacturer " << r.manufacturer << "\n"
        << "seller       " << r.seller << "\n"
        << "company      " << r.company << "  product " << r.product_id << "\n\n";
    out << pad("#", 2) << "  " << pad("Operation", 22, false) << pad("Gas", 10) << pad("Fee (ETH)", 12)
        << pad("Fee (USD)", 11) << "  Result\n";
    Wei total = 0;
    std::uint64_t gas = 0;
    int i = 1;
    auto usd = [&](Wei w) { return r.eth_usd_rate_micro ? format_fixed(w * r.eth_usd_rate_micro, 24, 2) : std::string("-"); };
    for (const auto& s : r.steps) {
        total += s.fee_wei;
        gas += s.gas;
        out << pad(std::to_string(i++), 2) << "  " << pad(s.description, 22, false) << pad(std::to_string(s.gas), 10)
            << pad(format_eth(s.fee_wei), 12) << pad(usd(s.fee_wei), 11) << "  " << (s.success ? "ok" : s.error) << "\n";
    }
    out << "    " << pad("Total", 22, false) << pad(std::to_string(gas), 10) << pad(format_eth(total), 12)
        << pad(usd(total), 11) << "\n\n";
    out << "pre-ship verdict  " << r.pre_ship_verdict.value("verdict", "?");
    if (r.pre_ship_verdict.value("reason", json()).is_string()) out << " (" << r.pre_ship_verdict["reason"].get<std::string>() << ")";
    out << "\nfinal verdict     " << (r.genuine() ? "GENUINE" : r.verdict.value("verdict", "?")) << "\n"
        << "payload           " << r.payload << "\n"
        << "state root        " << r.state_root << "\n"
        << (r.passed() ? "scenario passed\n" : "scenario FAILED\n");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"pchain: supply-chain provenance ledger client"};
    app.require_subcommand(1);
    Globals g;
    g.node_url = env_or("PCHAIN_NODE_URL", "http://127.0.0.1:8545");
    g.key_path = env_or("PCHAIN_KEY", "pchain.key");
    app.add_option("--node", g.node_url, "Node URL (PCHAIN_NODE_URL)");
    app.add_option("--key", g.key_path, "Keyfile path (PCHAIN_KEY)");
    app.add_option("--config", g.config_path, "Node config file for local commands (PCHAIN_CONFIG)");
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_flag("--no-produce", g.no_produce, "Wait for the node's block timer instead of requesting a block");

    std::function<int(Context&)> action;

    // keygen
    auto* keygen = app.add_subcommand("keygen", "Create a keyfile and print its address");
    std::string seed_hex;
    bool force = false;
    keygen->add_option("--seed", seed_hex, "32-byte seed as hex");
    keygen->add_flag("--force", force, "Overwrite an existing keyfile");
    keygen->callback([&] {
        action = [&](Context& ctx) {
            crypto::Seed seed{};
            if (!seed_hex.empty()) {
                const auto parsed = fixed_from_hex<32>(seed_hex);
                if (!parsed) throw CLI::ValidationError("--seed", "expected 64 hex digits");
                seed = *parsed;
            } else {
                seed = crypto::generate_keypair().private_key;
            }
            save_key(ctx.globals().key_path, seed, force);
            const auto key = crypto::generate_keypair(seed);
            const auto addr = crypto::derive_address(key.public_key);
            if (ctx.globals().json) {
                ctx.print_json({{"address", addr.to_text()},
                                {"public_key", to_hex_prefixed(key.public_key)},
                                {"keyfile", ctx.globals().key_path}});
            } else {
                ctx.out() << addr.to_text() << "\n";
            }
            return kExitOk;
        };
    });

    // address / account
    auto* account = app.add_subcommand("account", "Show balance and nonce of an account");
    std::string account_addr;
    account->add_option("--address", account_addr, "Account address; defaults to the keyfile's");
    account->callback([&] {
        action = [&](Context& ctx) {
            const Address a = account_addr.empty() ? crypto::derive_address(ctx.key().public_key)
                                                   : parse_address(account_addr, "--address");
            const auto r = ctx.client().get("/v1/accounts/" + a.to_text());
            if (!r.ok()) throw Rejection{r.error(), ""};
            if (ctx.globals().json) {
                ctx.print_json(r.body);
            } else {
                const auto bal = node::get_wei(r.body, "balance_wei");
                ctx.out() << a.to_text() << "\n  balance  " << format_eth(bal, 18) << " ETH\n  nonce    "
                          << r.body["nonce"].get<std::uint64_t>() << "\n";
            }
            return kExitOk;
        };
    });

    // faucet
    auto* faucet = app.add_subcommand("faucet", "Credit an account from the node faucet");
    std::string faucet_to, faucet_wei;
    faucet->add_option("--to", faucet_to, "Recipient address")->required();
    faucet->add_option("--wei", faucet_wei, "Amount in wei")->required();
    faucet->callback([&] {
        action = [&](Context& ctx) {
            const auto to = parse_address(faucet_to, "--to");
            const auto amount = parse_amount(faucet_wei, "--wei");
            auto& c = ctx.client();
            const auto r = c.post("/v1/faucet", json{{"address", to.to_text()}, {"amount_wei", wei_to_string(amount)}});
            TxOutcome o;
            if (!r.ok()) {
                o.rejected = r.error();
                return report_outcome(ctx, o, "faucet");
            }
            o.tx_hash = node::get_hash(r.body, "tx_hash");
            SendOptions opts;
            opts.produce = !ctx.globals().no_produce;
            if (opts.produce) {
                const auto p = c.post("/v1/blocks/produce");
                if (!p.ok()) throw TransportError("block production failed: " + p.error());
            }
            o.receipt = wait_for_receipt(c, o.tx_hash, opts);
            return report_outcome(ctx, o, "faucet");
        };
    });

    // company
    auto* company = app.add_subcommand("company", "Company commands");
    company->require_subcommand(1);
    auto* company_create = company->add_subcommand("create", "Create a company contract owned by the keyfile");
    std::string company_name, company_fee = "0";
    company_create->add_option("--name", company_name, "Company name")->required();
    company_create->add_option("--min-fee-wei", company_fee, "Minimum seller registration fee");
    company_create->callback([&] {
        action = [&](Context& ctx) {
            return transact(ctx, chain::CreateCompany{company_name, parse_amount(company_fee, "--min-fee-wei")}, 0,
                            "company create");
        };
    });
    auto* company_show = company->add_subcommand("show", "Show a company, or list all companies");
    std::string show_company;
    company_show->add_option("--company", show_company, "Company address");
    company_show->callback([&] {
        action = [&](Context& ctx) {
            const std::string path =
                show_company.empty() ? "/v1/companies" : "/v1/companies/" + parse_address(show_company, "--company").to_text();
            const auto r = ctx.client().get(path);
            if (!r.ok()) throw Rejection{r.error(), ""};
            ctx.print_json(r.body);
            return kExitOk;
        };
    });

    // product
    auto* product = app.add_subcommand("product", "Product commands");
    product->require_subcommand(1);
    std::string p_company, p_name, p_price, p_value, p_seller_name;
    std::uint64_t p_stock = 0, p_id = 0, p_qty = 1;

    auto* product_add = product->add_subcommand("add", "Enroll a product (manufacturer only)");
    product_add->add_option("--company", p_company, "Company address")->required();
    product_add->add_option("--name", p_name, "Product name")->required();
    product_add->add_option("--price-wei", p_price, "Unit price in wei")->required();
    product_add->add_option("--stock", p_stock, "Units in stock")->required();
    product_add->callback([&] {
        action = [&](Context& ctx) {
            return transact(ctx,
                            chain::EnrollProduct{parse_address(p_company, "--company"), p_name,
                                                 parse_amount(p_price, "--price-wei"), p_stock},
                            0, "product add");
        };
    });

    auto* product_buy = product->add_subcommand("buy", "Buy a product as a registered seller");
    product_buy->add_option("--company", p_company, "Company address")->required();
    product_buy->add_option("--id", p_id, "Product id")->required();
    product_buy->add_option("--seller-name", p_seller_name, "Name recorded as the new owner")->required();
    product_buy->add_option("--qty", p_qty, "Quantity");
    product_buy->add_option("--value-wei", p_value, "Attached value in wei")->required();
    product_buy->callback([&] {
        action = [&](Context& ctx) {
            return transact(ctx, chain::BuyProduct{parse_address(p_company, "--company"), p_id, p_seller_name, p_qty},
                            parse_amount(p_value, "--value-wei"), "product buy");
        };
    });

    auto* product_ship = product->add_subcommand("ship", "Ship a pending order (manufacturer only)");
    product_ship->add_option("--company", p_company, "Company address")->required();
    product_ship->add_option("--id", p_id, "Product id")->required();
    product_ship->callback([&] {
        action = [&](Context& ctx) {
            return transact(ctx, chain::DistributeProduct{parse_address(p_company, "--company"), p_id}, 0, "product ship");
        };
    });

    auto* product_show = product->add_subcommand("show", "Show a product record");
    product_show->add_option("--company", p_company, "Company address")->required();
    product_show->add_option("--id", p_id, "Product id")->required();
    product_show->callback([&] {
        action = [&](Context& ctx) {
            const auto r = ctx.client().get("/v1/companies/" + parse_address(p_company, "--company").to_text() +
                                            "/products/" + std::to_string(p_id));
            if (!r.ok()) throw Rejection{r.error(), ""};
            if (ctx.globals().json) {
                ctx.print_json(r.body);
            } else {
                ctx.out() << r.body["name"].get<std::string>() << " (#" << p_id << ")\n"
                          << "  price   " << r.body["price_wei"].get<std::string>() << " wei\n"
                          << "  stock   " << r.body["stock"].get<std::uint64_t>() << "\n"
                          << "  status  " << r.body["status"].get<std::string>() << " / "
                          << r.body["order_status"].get<std::string>() << "\n"
                          << "  owner   " << r.body["owner_name"].get<std::string>() << " "
                          << r.body["owner_address"].get<std::string>() << "\n";
            }
            return kExitOk;
        };
    });

    // seller
    auto* seller = app.add_subcommand("seller", "Seller commands");
    seller->require_subcommand(1);
    auto* seller_register = seller->add_subcommand("register", "Register the keyfile as a seller of a company");
    std::string s_company, s_value;
    seller_register->add_option("--company", s_company, "Company address")->required();
    seller_register->add_option("--value-wei", s_value, "Registration fee in wei")->required();
    seller_register->callback([&] {
        action = [&](Context& ctx) {
            return transact(ctx, chain::RegisterSeller{parse_address(s_company, "--company")},
                            parse_amount(s_value, "--value-wei"), "seller register");
        };
    });

    // qr
    auto* qr_cmd = app.add_subcommand("qr", "QR payload commands");
    qr_cmd->require_subcommand(1);
    auto* qr_show = qr_cmd->add_subcommand("show", "Issue the QR payload of a product");
    std::string q_company, q_png, q_payload;
    std::uint64_t q_id = 0;
    qr_show->add_option("--company", q_company, "Company address")->required();
    qr_show->add_option("--id", q_id, "Product id")->required();
    qr_show->add_option("--png", q_png, "Also write the QR symbol as a PNG image");
    qr_show->callback([&] {
        action = [&](Context& ctx) {
            const auto r = ctx.client().get("/v1/companies/" + parse_address(q_company, "--company").to_text() +
                                            "/products/" + std::to_string(q_id) + "/qr");
            if (!r.ok()) throw Rejection{r.error(), ""};
            const auto payload = node::get_string(r.body, "payload");
            if (!q_png.empty()) qr::write_png(qr::QrSymbol::encode_text(payload), q_png);
            if (ctx.globals().json) {
                json j{{"payload", payload}};
                if (!q_png.empty()) j["png"] = q_png;
                ctx.print_json(j);
            } else {
                ctx.out() << payload << "\n";
            }
            return kExitOk;
        };
    });

    auto* qr_verify = qr_cmd->add_subcommand("verify", "Verify a QR payload against the chain");
    auto* opt_payload = qr_verify->add_option("--payload", q_payload, "Payload text (pcv1:...)");
    auto* opt_png = qr_verify->add_option("--png", q_png, "PNG image holding the QR symbol");
    opt_payload->excludes(opt_png);
    qr_verify->callback([&] {
        action = [&](Context& ctx) {
            std::string payload = q_payload;
            if (!q_png.empty()) {
                const auto text = qr::read_png(q_png);
                if (!text) throw Rejection{"NoQRCode", "no QR code found in " + q_png};
                payload = *text;
            } else if (payload.empty()) {
                throw CLI::ValidationError("qr verify", "one of --payload or --png is required");
            }
            const auto r = ctx.client().post("/v1/qr/verify", json{{"payload", payload}});
            if (!r.ok()) throw Rejection{r.error(), "invalid code"};
            return print_verdict(ctx, r.body);
        };
    });

    // chain
    auto* chain_cmd = app.add_subcommand("chain", "Chain commands");
    chain_cmd->require_subcommand(1);
    auto* chain_validate = chain_cmd->add_subcommand("validate", "Re-validate the whole chain");
    std::string log_path;
    chain_validate->add_option("--log", log_path, "Validate a block log file locally instead of asking the node");
    chain_validate->callback([&] {
        action = [&](Context& ctx) {
            json result;
            if (!log_path.empty()) {
                const auto params = node::chain_params(ctx.config());
                try {
                    const auto store = chain::load(log_path, params);
                    result = node::validation_to_json(chain::validate_chain(store));
                    result["tip_height"] = store.height();
                } catch (const CorruptLogError& e) {
                    result = json{{"valid", false}, {"failure", "corrupt log"}, {"height", e.height()}, {"detail", e.reason()}};
                }
            } else {
                const auto r = ctx.client().get("/v1/chain/validate");
                if (!r.ok()) throw Rejection{r.error(), ""};
                result = r.body;
            }
            const bool valid = result["valid"].get<bool>();
            if (ctx.globals().json) {
                ctx.print_json(result);
            } else if (valid) {
                ctx.out() << "chain valid\n";
            } else {
                ctx.out() << "chain invalid at height " << result["height"].get<std::uint64_t>() << ": "
                          << result["failure"].get<std::string>();
                if (result["detail"].is_string() && !result["detail"].get<std::string>().empty())
                    ctx.out() << " (" << result["detail"].get<std::string>() << ")";
                ctx.out() << "\n";
            }
            return valid ? kExitOk : kExitRejected;
        };
    });
    auto* chain_head = chain_cmd->add_subcommand("head", "Show the chain tip");
    chain_head->callback([&] {
        action = [&](Context& ctx) {
            const auto r = ctx.client().get("/v1/chain/head");
            if (!r.ok()) throw Rejection{r.error(), ""};
            ctx.print_json(r.body);
            return kExitOk;
        };
    });

    // costs
    auto* costs = app.add_subcommand("costs", "Cost report commands");
    costs->require_subcommand(1);
    auto* costs_report = costs->add_subcommand("report", "Print the per-operation fee table");
    bool costs_local = false;
    costs_report->add_flag("--local", costs_local, "Compute from the local config instead of asking the node");
    costs_report->callback([&] {
        action = [&](Context& ctx) {
            json report;
            if (costs_local) {
                const auto config = ctx.config();
                report = node::cost_report_to_json(node::build_cost_report(node::chain_params(config).gas, config.eth_usd_rate_micro));
            } else {
                const auto r = ctx.client().get("/v1/costs");
                if (!r.ok()) throw Rejection{r.error(), ""};
                report = r.body;
            }
            if (ctx.globals().json) {
                ctx.print_json(report);
            } else {
                print_cost_report(ctx.out(), report);
            }
            return kExitOk;
        };
    });

    // scenario
    auto* scenario = app.add_subcommand("scenario", "Scripted lifecycle");
    scenario->require_subcommand(1);
    auto* scenario_run = scenario->add_subcommand("run", "Run the full product lifecycle and print its costs");
    bool embedded = false;
    std::optional<std::uint64_t> scenario_seed;
    scenario_run->add_flag("--embedded", embedded, "Run against a fresh in-memory node instead of --node");
    scenario_run->add_option("--seed", scenario_seed, "Derive the scenario keys from this number");
    scenario_run->callback([&] {
        action = [&](Context& ctx) {
            ScenarioOptions opts;
            opts.seed = scenario_seed;
            ScenarioResult result;
            if (embedded) {
                auto config = ctx.config();
                config.block_log.clear();
                config.block_interval_seconds = 0;
                config.faucet_enabled = true;
                node::Node n(config);
                node::HttpServer server(n);
                const int port = server.bind("127.0.0.1", 0);
                server.listen_in_background();
                NodeClient client("http://127.0.0.1:" + std::to_string(port));
                result = run_lifecycle(client, opts);
                server.stop();
            } else {
                result = run_lifecycle(ctx.client(), opts);
            }
            if (ctx.globals().json) {
                ctx.print_json(scenario_to_json(result));
            } else {
                print_scenario(ctx.out(), result);
            }
            return result.passed() ? kExitOk : kExitRejected;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    Context ctx(g, out, err);
    try {
        return action(ctx);
    } catch (const Rejection& r) {
        if (g.json) {
            ctx.print_json(node::error_json(r.code, r.message));
        } else {
            err << (r.message.empty() ? "" : r.message + ": ") << r.code << "\n";
        }
        return kExitRejected;
    } catch (const TransportError& e) {
        err << "transport error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const Error& e) {
        if (g.json) {
            ctx.print_json(node::error_json(to_string(e.code()), e.what()));
        } else {
            err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        }
        return kExitRejected;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRejected;
    }
}

}  // namespace pchain::cli
