#include <gtest/gtest.h>

#include <sys/stat.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <pchain/cli/cli.hpp>
#include <pchain/cli/scenario.hpp>
#include <pchain/node/http_server.hpp>

#include "golden_vectors.hpp"

using namespace pchain;
using node::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
};

class CliFixture : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("pchain-cli-" + std::to_string(::getpid()) + "-" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        node::NodeConfig config;
        config.block_log = dir_ / "chain.log";
        node_ = std::make_unique<node::Node>(config);
        server_ = std::make_unique<node::HttpServer>(*node_);
        url_ = "http://127.0.0.1:" + std::to_string(server_->bind("127.0.0.1", 0));
        server_->listen_in_background();
    }

    void TearDown() override
    {
        server_.reset();
        node_.reset();
        fs::remove_all(dir_);
    }

    Result pchain(std::vector<std::string> args)
    {
        args.insert(args.begin(), {"pchain", "--node", url_});
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        Result r;
        r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    std::string key(const std::string& name) const { return (dir_ / name).string(); }

    std::string keygen(const std::string& name, const std::string& seed = {})
    {
        std::vector<std::string> args{"--key", key(name), "--json", "keygen"};
        if (!seed.empty()) args.insert(args.end(), {"--seed", seed});
        const auto r = pchain(args);
        EXPECT_EQ(r.code, 0) << r.err;
        return r.parsed()["address"];
    }

    fs::path dir_;
    std::string url_;
    std::unique_ptr<node::Node> node_;
    std::unique_ptr<node::HttpServer> server_;
};

}  // namespace

TEST_F(CliFixture, KeygenWritesPrivateKeyfile)
{
    const auto golden = pchain({"--key", key("golden.key"), "keygen", "--seed",
                                "0101010101010101010101010101010101010101010101010101010101010101"});
    EXPECT_EQ(golden.code, 0);
    EXPECT_EQ(golden.out, std::string(golden::kAddressSeedOne) + "\n");

    struct stat st {};
    ASSERT_EQ(::stat(key("golden.key").c_str(), &st), 0);
    EXPECT_EQ(st.st_mode & 0777, 0600u);

    const auto again = pchain({"--key", key("golden.key"), "keygen"});
    EXPECT_NE(again.code, 0);
    EXPECT_NE(again.err.find("already exists"), std::string::npos);
    EXPECT_EQ(pchain({"--key", key("golden.key"), "keygen", "--force"}).code, 0);
    EXPECT_NE(pchain({"keygen", "--seed", "abc"}).code, 0);
}

TEST_F(CliFixture, LifecycleCommandsAndExitCodes)
{
    const auto m = keygen("m.key");
    const auto s = keygen("s.key");
    ASSERT_EQ(pchain({"faucet", "--to", m, "--wei", "1000000000000000000"}).code, 0);
    ASSERT_EQ(pchain({"faucet", "--to", s, "--wei", "1000000000000000000"}).code, 0);

    const auto created = pchain({"--key", key("m.key"), "--json", "company", "create", "--name", "Acme", "--min-fee-wei", "1000"});
    ASSERT_EQ(created.code, 0) << created.out << created.err;
    const auto receipt = created.parsed()["receipt"];
    EXPECT_EQ(receipt["fee_eth"], "0.001069");
    const std::string company = receipt["company"];

    const auto enrolled = pchain({"--key", key("m.key"), "--json", "product", "add", "--company", company, "--name",
                                  "Watch", "--price-wei", "500", "--stock", "3"});
    ASSERT_EQ(enrolled.code, 0);
    EXPECT_EQ(enrolled.parsed()["receipt"]["product_id"], 0);

    const auto low = pchain({"--key", key("s.key"), "seller", "register", "--company", company, "--value-wei", "999"});
    EXPECT_EQ(low.code, 1);
    EXPECT_NE(low.out.find("FeeTooLow"), std::string::npos);

    const auto unregistered = pchain({"--key", key("s.key"), "--json", "product", "buy", "--company", company, "--id",
                                      "0", "--seller-name", "Shop", "--qty", "1", "--value-wei", "500"});
    EXPECT_EQ(unregistered.code, 1);
    EXPECT_EQ(unregistered.parsed()["error"], "NotRegisteredSeller");

    EXPECT_EQ(pchain({"--key", key("s.key"), "seller", "register", "--company", company, "--value-wei", "1000"}).code, 0);
    EXPECT_EQ(pchain({"--key", key("s.key"), "product", "buy", "--company", company, "--id", "0", "--seller-name",
                      "Shop", "--qty", "1", "--value-wei", "500"}).code, 0);
    EXPECT_EQ(pchain({"--key", key("s.key"), "product", "ship", "--company", company, "--id", "0"}).code, 1);
    EXPECT_EQ(pchain({"--key", key("m.key"), "product", "ship", "--company", company, "--id", "0"}).code, 0);

    const auto png = (dir_ / "qr.png").string();
    const auto shown = pchain({"qr", "show", "--company", company, "--id", "0", "--png", png});
    ASSERT_EQ(shown.code, 0) << shown.err;
    const std::string payload = shown.out.substr(0, shown.out.size() - 1);
    EXPECT_TRUE(payload.starts_with("pcv1:"));
    EXPECT_TRUE(fs::exists(png));

    const auto by_text = pchain({"qr", "verify", "--payload", payload});
    EXPECT_EQ(by_text.code, 0);
    EXPECT_TRUE(by_text.out.starts_with("GENUINE"));
    const auto by_png = pchain({"--json", "qr", "verify", "--png", png});
    EXPECT_EQ(by_png.code, 0) << by_png.err;
    EXPECT_EQ(by_png.parsed()["verdict"], "Genuine");

    std::string tampered = payload;
    tampered[10] = tampered[10] == 'A' ? 'B' : 'A';
    const auto bad = pchain({"qr", "verify", "--payload", tampered});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("invalid code"), std::string::npos);

    const auto product = pchain({"--json", "product", "show", "--company", company, "--id", "0"}).parsed();
    EXPECT_EQ(product["status"], "Shipped");
    EXPECT_EQ(product["owner_name"], "Shop");

    EXPECT_EQ(pchain({"chain", "validate"}).code, 0);
    const auto acct = pchain({"--key", key("s.key"), "--json", "account"}).parsed();
    EXPECT_EQ(acct["nonce"], 5);
}

TEST_F(CliFixture, SigningCommandsNeedAKeyfile)
{
    const auto r = pchain({"--key", key("missing.key"), "company", "create", "--name", "X"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("keygen"), std::string::npos);
}

TEST_F(CliFixture, UnreachableNodeIsATransportError)
{
    std::vector<const char*> argv{"pchain", "--node", "http://127.0.0.1:1", "chain", "head"};
    std::ostringstream out, err;
    EXPECT_EQ(cli::run(static_cast<int>(argv.size()), argv.data(), out, err), cli::kExitTransport);
}

TEST_F(CliFixture, ValidateFlagsAFlippedLogByte)
{
    const auto m = keygen("m.key");
    for (int i = 0; i < 3; ++i) ASSERT_EQ(pchain({"faucet", "--to", m, "--wei", "5"}).code, 0);
    node_->read([](const chain::ChainStore& s) { EXPECT_EQ(s.height(), 3u); return 0; });

    const auto log = dir_ / "chain.log";
    EXPECT_EQ(pchain({"chain", "validate", "--log", log.string()}).code, 0);

    std::ifstream in(log, std::ios::binary);
    Bytes bytes((std::istreambuf_iterator<char>(in)), {});
    bytes[bytes.size() - 10] ^= 0x04;
    const auto bad = dir_ / "bad.log";
    std::ofstream(bad, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));

    const auto r = pchain({"--json", "chain", "validate", "--log", bad.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.parsed()["valid"], false);
    EXPECT_EQ(r.parsed()["height"], 3);
}

TEST_F(CliFixture, CostsReportJsonAndTable)
{
    const auto j = pchain({"--json", "costs", "report"});
    ASSERT_EQ(j.code, 0);
    const auto report = j.parsed();
    const std::array<const char*, 5> fees{"0.001069", "0.000046", "0.000209", "0.000042", "0.000056"};
    for (std::size_t i = 0; i < fees.size(); ++i) EXPECT_EQ(report["rows"][i + 1]["fee_eth"], fees[i]);

    const auto table = pchain({"costs", "report", "--local"});
    EXPECT_EQ(table.code, 0);
    EXPECT_NE(table.out.find("Adding New Company"), std::string::npos);
    EXPECT_NE(table.out.find("8.56"), std::string::npos);
}

TEST_F(CliFixture, ScenarioReproducesFeesAndIsDeterministic)
{
    const auto r = pchain({"--json", "scenario", "run", "--seed", "11"});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    const auto j = r.parsed();
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["verdict"]["verdict"], "Genuine");
    EXPECT_EQ(j["pre_ship_verdict"]["reason"], "NotYetShipped");
    std::map<std::string, std::string> fees;
    for (const auto& s : j["steps"]) fees[s["action"]] = s["fee_eth"];
    EXPECT_EQ(fees["CreateCompany"], "0.001069");
    EXPECT_EQ(fees["RegisterSeller"], "0.000046");
    EXPECT_EQ(fees["EnrollProduct"], "0.000209");
    EXPECT_EQ(fees["BuyProduct"], "0.000042");
    EXPECT_EQ(fees["DistributeProduct"], "0.000056");

    // Same commands against two fresh nodes.
    const auto a = pchain({"--json", "scenario", "run", "--embedded", "--seed", "11"});
    const auto b = pchain({"--json", "scenario", "run", "--embedded", "--seed", "11"});
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(a.parsed()["state_root"], b.parsed()["state_root"]);
    EXPECT_EQ(a.parsed()["state_root"], j["state_root"]);

    const auto human = pchain({"scenario", "run", "--embedded"});
    EXPECT_EQ(human.code, 0);
    EXPECT_NE(human.out.find("GENUINE"), std::string::npos);
}
