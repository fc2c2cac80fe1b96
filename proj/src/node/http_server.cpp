#include <pchain/node/http_server.hpp>

#include <regex>
#include <stdexcept>

#include <httplib.h>

#include <pchain/node/cost_report.hpp>
#include <pchain/node/json_codec.hpp>
#include <pchain/qr/payload.hpp>

namespace pchain::node {

namespace {

using httplib::Request;
using httplib::Response;

void send(Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(Response& res, int status, std::string_view code, std::string_view message = {})
{
    send(res, status, error_json(code, message));
}

int status_for(Errc code)
{
    switch (code) {
    case Errc::UnknownCompany:
    case Errc::UnknownProduct: return 404;
    default: return 400;
    }
}

json parse_body(const Request& req)
{
    auto body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) throw Error(Errc::Malformed, "request body is not a JSON object");
    return body;
}

Address path_address(const Request& req, std::size_t index)
{
    const auto a = Address::from_text(req.matches[static_cast<int>(index)].str());
    if (!a) throw Error(Errc::Malformed, "bad address in path");
    return *a;
}

std::uint64_t path_u64(const Request& req, std::size_t index)
{
    const auto v = parse_wei(req.matches[static_cast<int>(index)].str());
    if (!v || *v > std::numeric_limits<std::uint64_t>::max()) throw Error(Errc::Malformed, "bad number in path");
    return static_cast<std::uint64_t>(*v);
}

constexpr const char* kAddr = "(0x[0-9a-fA-F]{40})";

std::string route(std::string pattern)
{
    for (auto pos = pattern.find("{addr}"); pos != std::string::npos; pos = pattern.find("{addr}"))
        pattern.replace(pos, 6, kAddr);
    for (auto pos = pattern.find("{n}"); pos != std::string::npos; pos = pattern.find("{n}"))
        pattern.replace(pos, 3, "([0-9]+)");
    return pattern;
}

}  // namespace

struct HttpServer::Impl {
    Node& node;
    httplib::Server server;

    explicit Impl(Node& n) : node(n) { install(); }

    using Handler = std::function<void(const Request&, Response&)>;

    // Maps library errors to JSON error bodies.
    static httplib::Server::Handler guarded(Handler h)
    {
        return [h = std::move(h)](const Request& req, Response& res) {
            try {
                h(req, res);
            } catch (const Error& e) {
                send_error(res, status_for(e.code()), to_string(e.code()), e.what());
            } catch (const std::exception& e) {
                send_error(res, 500, "Internal", e.what());
            }
        };
    }

    void get(const std::string& pattern, Handler h) { server.Get(route(pattern), guarded(std::move(h))); }
    void post(const std::string& pattern, Handler h) { server.Post(route(pattern), guarded(std::move(h))); }

    void install()
    {
        server.set_default_headers({
            {"Access-Control-Allow-Origin", "*"},
            {"Access-Control-Allow-Headers", "Content-Type"},
            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
        });
        server.Options(R"(/.*)", [](const Request&, Response& res) { res.status = 204; });
        server.set_error_handler([](const Request&, Response& res) {
            if (res.body.empty()) {
                send_error(res, res.status, res.status == 404 ? "NotFound" : "HttpError");
            }
        });

        post("/v1/tx", [this](const Request& req, Response& res) {
            const auto stx = transaction_from_json(parse_body(req));
            const auto r = node.submit(stx);
            if (!r.accepted()) return send_error(res, 400, to_string(r.error));
            send(res, 202, json{{"tx_hash", to_hex_prefixed(r.tx_hash)}});
        });

        post("/v1/blocks/produce", [this](const Request&, Response& res) {
            send(res, 200, block_to_json(node.produce()));
        });

        get("/v1/chain/head", [this](const Request&, Response& res) {
            send(res, 200, node.read([](const chain::ChainStore& s) { return head_to_json(s.tip()); }));
        });

        get("/v1/chain/validate", [this](const Request&, Response& res) {
            send(res, 200, node.read([](const chain::ChainStore& s) { return validation_to_json(chain::validate_chain(s)); }));
        });

        get("/v1/blocks/{n}", [this](const Request& req, Response& res) {
            const auto h = path_u64(req, 1);
            const auto body = node.read([&](const chain::ChainStore& s) -> std::optional<json> {
                if (h > s.height()) return std::nullopt;
                return block_to_json(s.blocks()[h]);
            });
            if (!body) return send_error(res, 404, "NotFound", "no block at that height");
            send(res, 200, *body);
        });

        get("/v1/receipts/(0x[0-9a-fA-F]{64})", [this](const Request& req, Response& res) {
            const auto hash = fixed_from_hex<32>(req.matches[1].str());
            const auto body = node.read([&](const chain::ChainStore& s) -> std::optional<json> {
                const auto loc = s.find_receipt(*hash);
                if (!loc) return std::nullopt;
                json j = receipt_to_json(s.blocks()[loc->height].receipts[loc->index]);
                j["block_height"] = loc->height;
                j["index"] = loc->index;
                return j;
            });
            if (!body) return send_error(res, 404, "NotFound", "no receipt for that transaction");
            send(res, 200, *body);
        });

        get("/v1/accounts/{addr}", [this](const Request& req, Response& res) {
            const auto a = path_address(req, 1);
            json body = node.read([&](const chain::ChainStore& s) {
                return json{{"address", a.to_text()},
                            {"balance_wei", wei_to_string(s.state().balance_of(a))},
                            {"nonce", s.state().nonce_of(a)}};
            });
            body["next_nonce"] = node.next_nonce(a);
            send(res, 200, body);
        });

        get("/v1/companies", [this](const Request&, Response& res) {
            send(res, 200, node.read([](const chain::ChainStore& s) {
                json list = json::array();
                for (const auto& c : vm::list_companies(s.state())) list.push_back(company_summary_to_json(c));
                return list;
            }));
        });

        get("/v1/companies/{addr}", [this](const Request& req, Response& res) {
            const auto a = path_address(req, 1);
            send(res, 200, node.read([&](const chain::ChainStore& s) {
                const auto* c = s.state().find_company(a);
                if (!c) throw Error(Errc::UnknownCompany, "no company at " + a.to_text());
                return company_to_json(*c);
            }));
        });

        get("/v1/companies/{addr}/sellers/{addr}", [this](const Request& req, Response& res) {
            const auto a = path_address(req, 1);
            const auto seller = path_address(req, 2);
            send(res, 200, node.read([&](const chain::ChainStore& s) {
                const auto* c = s.state().find_company(a);
                if (!c) throw Error(Errc::UnknownCompany, "no company at " + a.to_text());
                return json{{"company", a.to_text()}, {"seller", seller.to_text()}, {"registered", c->is_registered(seller)}};
            }));
        });

        get("/v1/companies/{addr}/products/{n}", [this](const Request& req, Response& res) {
            const auto a = path_address(req, 1);
            const auto id = path_u64(req, 2);
            send(res, 200, node.read([&](const chain::ChainStore& s) {
                return product_to_json(a, vm::query_product(s.state(), a, id));
            }));
        });

        get("/v1/companies/{addr}/products/{n}/qr", [this](const Request& req, Response& res) {
            const auto a = path_address(req, 1);
            const auto id = path_u64(req, 2);
            send(res, 200, node.read([&](const chain::ChainStore& s) {
                return json{{"payload", qr::encode_text(qr::issue_payload(s, a, id))}};
            }));
        });

        post("/v1/qr/verify", [this](const Request& req, Response& res) {
            const auto body = parse_body(req);
            const auto payload = qr::decode_text(get_string(body, "payload"));
            send(res, 200, node.read([&](const chain::ChainStore& s) {
                json j = verdict_to_json(qr::verify(payload, s));
                j["payload"] = payload_to_json(payload);
                const auto* c = s.state().find_company(payload.company);
                if (c && payload.product_id < c->products.size()) {
                    json chain_side = product_to_json(c->contract_address, c->products[payload.product_id]);
                    chain_side["manufacturer"] = c->manufacturer.to_text();
                    j["chain"] = std::move(chain_side);
                } else {
                    j["chain"] = nullptr;
                }
                return j;
            }));
        });

        post("/v1/faucet", [this](const Request& req, Response& res) {
            if (!node.config().faucet_enabled) return send_error(res, 403, "FaucetDisabled");
            const auto body = parse_body(req);
            const auto r = node.faucet(get_address(body, "address"), get_wei(body, "amount_wei"));
            if (!r.accepted()) return send_error(res, 400, to_string(r.error));
            send(res, 202, json{{"tx_hash", to_hex_prefixed(r.tx_hash)}});
        });

        get("/v1/costs", [this](const Request&, Response& res) {
            send(res, 200, cost_report_to_json(build_cost_report(node.params().gas, node.config().eth_usd_rate_micro)));
        });

        get("/v1/gas-schedule", [this](const Request&, Response& res) {
            send(res, 200, gas_schedule_to_json(node.params().gas));
        });
    }
};

HttpServer::HttpServer(Node& node) : impl_(std::make_unique<Impl>(node)) {}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen()
{
    impl_->server.listen_after_bind();
}

void HttpServer::listen_in_background()
{
    thread_ = std::thread([this] { listen(); });
    impl_->server.wait_until_ready();
}

void HttpServer::stop()
{
    impl_->server.stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace pchain::node
