#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <thread>

#include <httplib.h>

#include <pchain/node/config.hpp>
#include <pchain/node/cost_report.hpp>
#include <pchain/node/http_server.hpp>
#include <pchain/node/json_codec.hpp>

#include "support/harness.hpp"

using namespace pchain;
using namespace pchain::node;
namespace fs = std::filesystem;

namespace {

crypto::Seed seed_of(std::uint8_t b)
{
    crypto::Seed s{};
    s.fill(b);
    return s;
}

class Served {
public:
    explicit Served(NodeConfig config = {}) : node_(std::move(config)), server_(node_)
    {
        port_ = server_.bind("127.0.0.1", 0);
        server_.listen_in_background();
        client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    }

    Node& node() { return node_; }

    std::pair<int, json> get(const std::string& path)
    {
        auto r = client_->Get(path);
        if (!r) throw std::runtime_error("no response for " + path);
        return {r->status, json::parse(r->body)};
    }
    std::pair<int, json> post(const std::string& path, const json& body = json::object())
    {
        auto r = client_->Post(path, body.dump(), "application/json");
        if (!r) throw std::runtime_error("no response for " + path);
        return {r->status, json::parse(r->body)};
    }
    httplib::Client& raw() { return *client_; }

    // Signs with the next nonce and posts the transaction.
    std::pair<int, json> send(const crypto::KeyPair& key, chain::Action action, Wei value = 0)
    {
        const Address sender = test::address_of(key);
        const auto nonce = get("/v1/accounts/" + sender.to_text()).second["next_nonce"].get<std::uint64_t>();
        const auto stx = chain::sign_transaction(chain::Transaction{sender, nonce, std::move(action), value}, key);
        return post("/v1/tx", transaction_to_json(stx));
    }

    json run(const crypto::KeyPair& key, chain::Action action, Wei value = 0)
    {
        auto [status, body] = send(key, std::move(action), value);
        if (status != 202) throw std::runtime_error("rejected: " + body.dump());
        post("/v1/blocks/produce");
        return get("/v1/receipts/" + body["tx_hash"].get<std::string>()).second;
    }

    void fund(const Address& a, Wei amount = kWeiPerEth)
    {
        post("/v1/faucet", json{{"address", a.to_text()}, {"amount_wei", wei_to_string(amount)}});
    }

private:
    Node node_;
    HttpServer server_;
    int port_ = 0;
    std::unique_ptr<httplib::Client> client_;
};

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("pchain-node-" + std::to_string(::getpid()) + "-" +
                                                 std::to_string(std::rand()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(Config, ParsesEveryKey)
{
    const auto c = parse_config(
        "# comment\n"
        "listen = 0.0.0.0:9000\n"
        "block_log = /tmp/x.log\n"
        "producer_seed = " + std::string(64, 'a') + "\n"
        "gas_price_wei = 2000000000\n"
        "eth_usd_rate = 3106.72\n"
        "block_interval_seconds = 5   # trailing comment\n"
        "faucet_enabled = false\n");
    EXPECT_EQ(c.host, "0.0.0.0");
    EXPECT_EQ(c.port, 9000);
    EXPECT_EQ(c.block_log, "/tmp/x.log");
    EXPECT_EQ(c.producer_seed, seed_of(0xaa));
    EXPECT_EQ(c.gas_price_wei, Wei(2'000'000'000));
    EXPECT_EQ(c.eth_usd_rate_micro, Wei(3'106'720'000));
    EXPECT_EQ(c.block_interval_seconds, 5u);
    EXPECT_FALSE(c.faucet_enabled);
}

TEST(Config, RejectsInvalidValues)
{
    for (const char* text : {"gas_price_wei = 0", "eth_usd_rate = 0", "eth_usd_rate = -1", "colour = blue",
                             "listen = host:99999", "faucet_enabled = maybe", "producer_seed = 12", "no equals"}) {
        try {
            parse_config(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::ConfigInvalid) << text;
        }
    }
}

TEST(Config, EnvironmentOverridesListen)
{
    TempDir dir;
    const auto file = dir.path / "node.conf";
    std::ofstream(file) << "listen = 127.0.0.1:7000\nfaucet_enabled = false\n";
    ::setenv("PCHAIN_CONFIG", file.c_str(), 1);
    ::setenv("PCHAIN_LISTEN", "7001", 1);
    const auto c = config_from_environment();
    ::unsetenv("PCHAIN_CONFIG");
    ::unsetenv("PCHAIN_LISTEN");
    EXPECT_EQ(c.port, 7001);
    EXPECT_EQ(c.host, "127.0.0.1");
    EXPECT_FALSE(c.faucet_enabled);
}

TEST(CostReport, DefaultScheduleMatchesReferenceRows)
{
    const auto report = build_cost_report(vm::GasSchedule{}, 3'106'720'000);
    ASSERT_EQ(report.rows.size(), 6u);
    const std::array<const char*, 6> fee{"0.000133", "0.001069", "0.000046", "0.000209", "0.000042", "0.000056"};
    const std::array<std::uint64_t, 6> gas{133405, 1068597, 45755, 208571, 41581, 55578};
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(report.rows[i].gas, gas[i]);
        EXPECT_EQ(report.rows[i].fee_eth, fee[i]);
        if (i > 0) {
            EXPECT_EQ(report.rows[i].fee_eth, report.rows[i].reference_fee_eth);
            EXPECT_FALSE(report.rows[i].annotation.has_value());
        }
    }
    EXPECT_EQ(report.rows[0].reference_fee_eth, "0.001333");
    ASSERT_TRUE(report.rows[0].annotation.has_value());
    EXPECT_NE(report.rows[0].annotation->find("133405"), std::string::npos);
}

TEST(CostReport, TotalsAreColumnSums)
{
    const auto report = build_cost_report(vm::GasSchedule{}, 3'106'720'000);
    Wei fee = 0, ref = 0;
    std::uint64_t gas = 0;
    for (const auto& r : report.rows) {
        fee += r.fee_wei;
        ref += r.reference_fee_wei;
        gas += r.gas;
    }
    EXPECT_EQ(report.totals.gas, gas);
    EXPECT_EQ(report.totals.fee_wei, fee);
    EXPECT_EQ(report.totals.reference_fee_wei, ref);
    EXPECT_EQ(report.totals.reference_fee_eth, "0.002755");
    EXPECT_EQ(report.totals.reference_fee_usd, "8.56");
    EXPECT_EQ(report.totals.fee_eth, "0.001553");
    EXPECT_EQ(report.rows[0].reference_fee_usd, "4.14");
}

TEST(CostReport, UsdRounding)
{
    EXPECT_EQ(usd_string(kWeiPerEth, 3'106'720'000), "3106.72");
    EXPECT_EQ(usd_string(kWeiPerEth / 1000, 1'000'000), "0.00");
    EXPECT_EQ(usd_string(kWeiPerEth / 200, 1'000'000), "0.01");
    EXPECT_EQ(usd_string(0, 3'106'720'000), "0.00");
}

TEST(JsonCodec, TransactionRoundTrip)
{
    const auto key = test::key_from_byte(1);
    const std::vector<chain::Action> actions{
        chain::CreateCompany{"Acme", 5},
        chain::EnrollProduct{test::address_from_byte(2), "Watch", 100, 3},
        chain::RegisterSeller{test::address_from_byte(2)},
        chain::BuyProduct{test::address_from_byte(2), 1, "Shop", 2},
        chain::DistributeProduct{test::address_from_byte(2), 1},
        chain::Transfer{test::address_from_byte(3)},
        chain::Mint{test::address_from_byte(4)},
    };
    std::uint64_t nonce = 0;
    for (const auto& a : actions) {
        const auto stx = chain::sign_transaction(chain::Transaction{test::address_of(key), nonce++, a, 42}, key);
        const auto j = transaction_to_json(stx);
        EXPECT_EQ(transaction_from_json(json::parse(j.dump())), stx);
    }
    auto j = transaction_to_json(chain::sign_transaction(chain::Transaction{test::address_of(key), 0, actions[0], 0}, key));
    j["tx_hash"] = to_hex_prefixed(Hash256{});
    EXPECT_THROW(transaction_from_json(j), Error);
    j.erase("tx_hash");
    j["value_wei"] = 5;
    EXPECT_THROW(transaction_from_json(j), Error);
    j["value_wei"] = "5";
    j["sender"] = "34750f98bd59fcfc946da45aaabe933be154a4b5";
    EXPECT_THROW(transaction_from_json(j), Error);
}

TEST(JsonCodec, ReceiptRoundTrip)
{
    vm::ExecutionReceipt r;
    r.tx_hash[3] = 9;
    r.gas_used = 41581;
    r.fee_wei = Wei(41581) * kWeiPerGwei;
    r.error = Errc::ValueTooLow;
    r.company = test::address_from_byte(7);
    EXPECT_EQ(receipt_from_json(receipt_to_json(r)), r);
    r.success = true;
    r.error = Errc::None;
    r.product_id = 3;
    EXPECT_EQ(receipt_from_json(receipt_to_json(r)), r);
}

TEST(Http, LifecycleEndsGenuine)
{
    Served s;
    const auto mfr = test::key_from_byte(1);
    const auto seller = test::key_from_byte(2);
    s.fund(test::address_of(mfr));
    s.fund(test::address_of(seller));
    s.post("/v1/blocks/produce");

    const auto created = s.run(mfr, chain::CreateCompany{"Acme", 1000});
    ASSERT_TRUE(created["success"].get<bool>());
    const auto company = created["company"].get<std::string>();
    const Address caddr = *Address::from_text(company);
    ASSERT_TRUE(s.run(mfr, chain::EnrollProduct{caddr, "Watch", 500, 4})["success"].get<bool>());
    ASSERT_TRUE(s.run(seller, chain::RegisterSeller{caddr}, 1000)["success"].get<bool>());
    ASSERT_TRUE(s.run(seller, chain::BuyProduct{caddr, 0, "Shop", 1}, 500)["success"].get<bool>());

    const std::string product = "/v1/companies/" + company + "/products/0";
    const auto pending = s.get(product + "/qr").second["payload"].get<std::string>();
    const auto early = s.post("/v1/qr/verify", json{{"payload", pending}}).second;
    EXPECT_EQ(early["verdict"], "Unknown");
    EXPECT_EQ(early["reason"], "NotYetShipped");

    ASSERT_TRUE(s.run(mfr, chain::DistributeProduct{caddr, 0})["success"].get<bool>());
    const auto payload = s.get(product + "/qr").second["payload"].get<std::string>();
    EXPECT_TRUE(payload.starts_with("pcv1:"));
    const auto [status, verdict] = s.post("/v1/qr/verify", json{{"payload", payload}});
    EXPECT_EQ(status, 200);
    EXPECT_EQ(verdict["verdict"], "Genuine");
    EXPECT_EQ(verdict["chain"]["owner_name"], "Shop");
    EXPECT_EQ(verdict["payload"]["status"], "Shipped");

    const auto p = s.get(product).second;
    EXPECT_EQ(p["status"], "Shipped");
    EXPECT_EQ(p["order_status"], "Complete");
    EXPECT_EQ(p["stock"], 3);

    const auto c = s.get("/v1/companies/" + company).second;
    EXPECT_EQ(c["sellers"].size(), 1u);
    EXPECT_EQ(s.get("/v1/companies/" + company + "/sellers/" + test::address_of(seller).to_text()).second["registered"], true);
    EXPECT_EQ(s.get("/v1/companies").second.size(), 1u);
    EXPECT_EQ(s.get("/v1/chain/validate").second["valid"], true);
}

TEST(Http, CostsEndpointMatchesReferenceRows)
{
    Served s;
    const auto [status, report] = s.get("/v1/costs");
    ASSERT_EQ(status, 200);
    ASSERT_EQ(report["rows"].size(), 6u);
    for (std::size_t i = 1; i < 6; ++i) EXPECT_EQ(report["rows"][i]["fee_eth"], report["rows"][i]["reference_fee_eth"]);
    EXPECT_TRUE(report["rows"][0]["annotation"].is_string());
    EXPECT_EQ(report["totals"]["reference_fee_usd"], "8.56");
    EXPECT_EQ(report["eth_usd_rate"], "3106.72");

    const auto gas = s.get("/v1/gas-schedule").second;
    EXPECT_EQ(gas["operations"]["CreateCompany"], 1068597);
    EXPECT_EQ(gas["gas_price_wei"], "1000000000");
}

TEST(Http, CorruptedSignatureIsRejectedWithoutSideEffects)
{
    Served s;
    const auto key = test::key_from_byte(1);
    s.fund(test::address_of(key));
    s.post("/v1/blocks/produce");
    auto stx = chain::sign_transaction(chain::Transaction{test::address_of(key), 0, chain::CreateCompany{"A", 0}, 0}, key);
    stx.signature[0] ^= 0x80;
    const auto before = s.node().pending();
    const auto [status, body] = s.post("/v1/tx", transaction_to_json(stx));
    EXPECT_EQ(status, 400);
    EXPECT_EQ(body["error"], "BadSignature");
    EXPECT_EQ(s.node().pending(), before);
}

TEST(Http, AdmissionErrors)
{
    Served s;
    const auto key = test::key_from_byte(1);
    EXPECT_EQ(s.send(key, chain::CreateCompany{"A", 0}).second["error"], "InsufficientBalance");
    s.fund(test::address_of(key));
    s.post("/v1/blocks/produce");
    auto stx = chain::sign_transaction(chain::Transaction{test::address_of(key), 4, chain::CreateCompany{"A", 0}, 0}, key);
    const auto [status, body] = s.post("/v1/tx", transaction_to_json(stx));
    EXPECT_EQ(status, 400);
    EXPECT_EQ(body["error"], "NonceGap");

    auto raw = s.raw().Post("/v1/tx", "{not json", "application/json");
    ASSERT_TRUE(raw);
    EXPECT_EQ(raw->status, 400);
    EXPECT_EQ(json::parse(raw->body)["error"], "Malformed");
    EXPECT_EQ(s.post("/v1/tx", json{{"sender", "0x12"}}).second["error"], "Malformed");
}

TEST(Http, MissingResourcesAre404)
{
    Served s;
    EXPECT_EQ(s.get("/v1/blocks/5").first, 404);
    EXPECT_EQ(s.get("/v1/receipts/0x" + std::string(64, '0')).first, 404);
    const auto [cs, cb] = s.get("/v1/companies/0x" + std::string(40, '1'));
    EXPECT_EQ(cs, 404);
    EXPECT_EQ(cb["error"], "UnknownCompany");
    EXPECT_EQ(s.get("/v1/companies/0x" + std::string(40, '1') + "/products/0").first, 404);
    EXPECT_EQ(s.get("/v1/nowhere").first, 404);
    EXPECT_EQ(s.get("/v1/blocks/0").first, 200);
}

TEST(Http, QrDecodeErrorsAre400)
{
    Served s;
    const auto [status, body] = s.post("/v1/qr/verify", json{{"payload", "hello"}});
    EXPECT_EQ(status, 400);
    EXPECT_EQ(body["error"], "BadPrefix");
    EXPECT_EQ(s.post("/v1/qr/verify", json{{"payload", "pcv2:AAAA"}}).second["error"], "UnsupportedVersion");
}

TEST(Http, FaucetCanBeDisabled)
{
    NodeConfig config;
    config.faucet_enabled = false;
    Served s(config);
    const auto [status, body] =
        s.post("/v1/faucet", json{{"address", test::address_from_byte(1).to_text()}, {"amount_wei", "5"}});
    EXPECT_EQ(status, 403);
    EXPECT_EQ(body["error"], "FaucetDisabled");
}

TEST(Http, ReadsAreIdempotentBetweenBlocks)
{
    Served s;
    s.fund(test::address_from_byte(9));
    s.post("/v1/blocks/produce");
    for (const char* path : {"/v1/chain/head", "/v1/blocks/1", "/v1/companies", "/v1/costs"}) {
        auto a = s.raw().Get(path);
        auto b = s.raw().Get(path);
        ASSERT_TRUE(a && b);
        EXPECT_EQ(a->body, b->body) << path;
    }
}

TEST(Http, EveryAcceptedMutationAppearsInTheNextBlock)
{
    Served s;
    std::vector<std::string> hashes;
    for (std::uint8_t i = 1; i <= 5; ++i) {
        const auto [status, body] = s.post("/v1/faucet", json{{"address", test::address_from_byte(i).to_text()}, {"amount_wei", "7"}});
        ASSERT_EQ(status, 202);
        hashes.push_back(body["tx_hash"]);
    }
    const auto block = s.post("/v1/blocks/produce").second;
    ASSERT_EQ(block["receipts"].size(), hashes.size());
    for (std::size_t i = 0; i < hashes.size(); ++i) EXPECT_EQ(block["receipts"][i]["tx_hash"], hashes[i]);
    EXPECT_EQ(s.get("/v1/accounts/" + test::address_from_byte(3).to_text()).second["balance_wei"], "7");
}

TEST(Http, CorsHeaders)
{
    Served s;
    auto r = s.raw().Get("/v1/chain/head");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
    auto o = s.raw().Options("/v1/tx");
    ASSERT_TRUE(o);
    EXPECT_EQ(o->status, 204);
}

TEST(Http, ConcurrentClients)
{
    Served s;
    std::vector<crypto::KeyPair> keys;
    for (std::uint8_t i = 1; i <= 4; ++i) {
        keys.push_back(test::key_from_byte(i));
        s.fund(test::address_of(keys.back()));
    }
    s.post("/v1/blocks/produce");
    std::atomic<int> accepted{0};
    std::vector<std::thread> threads;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        threads.emplace_back([&, k] {
            httplib::Client c("127.0.0.1", s.raw().port());
            for (std::uint64_t n = 0; n < 10; ++n) {
                const auto stx = chain::sign_transaction(
                    chain::Transaction{test::address_of(keys[k]), n, chain::Transfer{test::address_from_byte(0x50)}, 1}, keys[k]);
                auto r = c.Post("/v1/tx", transaction_to_json(stx).dump(), "application/json");
                if (r && r->status == 202) ++accepted;
                c.Get("/v1/chain/head");
            }
        });
    }
    std::thread producer([&] {
        httplib::Client c("127.0.0.1", s.raw().port());
        for (int i = 0; i < 5; ++i) c.Post("/v1/blocks/produce", "{}", "application/json");
    });
    for (auto& t : threads) t.join();
    producer.join();
    s.post("/v1/blocks/produce");
    EXPECT_EQ(accepted.load(), 40);
    EXPECT_EQ(s.get("/v1/accounts/" + test::address_from_byte(0x50).to_text()).second["balance_wei"], "40");
    EXPECT_EQ(s.get("/v1/chain/validate").second["valid"], true);
}

TEST(Http, RestartServesTheSameHead)
{
    TempDir dir;
    NodeConfig config;
    config.block_log = dir.path / "chain.log";
    config.producer_seed = seed_of(0x31);
    json head;
    {
        Served s(config);
        const auto key = test::key_from_byte(1);
        s.fund(test::address_of(key));
        s.post("/v1/blocks/produce");
        s.run(key, chain::CreateCompany{"Acme", 1});
        head = s.get("/v1/chain/head").second;
        EXPECT_EQ(head["height"], 2);
    }
    Served again(config);
    EXPECT_EQ(again.get("/v1/chain/head").second, head);
    EXPECT_EQ(again.get("/v1/companies").second.size(), 1u);

    // A different producer key cannot replay the log's faucet mints.
    NodeConfig other = config;
    other.producer_seed = seed_of(0x32);
    EXPECT_THROW(Node{other}, CorruptLogError);
}

TEST(Http, IntervalProductionCommitsWithoutExplicitRequests)
{
    NodeConfig config;
    config.block_interval_seconds = 1;
    Served s(config);
    s.node().start();
    const auto [status, body] = s.post("/v1/faucet", json{{"address", test::address_from_byte(1).to_text()}, {"amount_wei", "3"}});
    ASSERT_EQ(status, 202);
    const auto path = "/v1/receipts/" + body["tx_hash"].get<std::string>();
    int code = 404;
    for (int i = 0; i < 40 && code == 404; ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        code = s.get(path).first;
    }
    EXPECT_EQ(code, 200);
    s.node().stop();
}
