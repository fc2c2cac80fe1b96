#include <pchain/cli/scenario.hpp>

#include <pchain/cli/wallet.hpp>
#include <pchain/crypto/hash.hpp>

namespace pchain::cli {

namespace {

crypto::KeyPair scenario_key(const std::optional<std::uint64_t>& seed, std::uint8_t role)
{
    if (!seed) return crypto::generate_keypair();
    ByteWriter w;
    w.str("pchain-scenario");
    w.u64(*seed);
    w.u8(role);
    return crypto::generate_keypair(crypto::sha256(w.bytes()));
}

ScenarioStep record(std::string description, const std::string& action, const TxOutcome& out)
{
    ScenarioStep s;
    s.description = std::move(description);
    s.action = action;
    s.success = out.succeeded();
    s.error = out.error();
    if (out.receipt) {
        s.gas = node::get_u64(*out.receipt, "gas_used");
        s.fee_wei = node::get_wei(*out.receipt, "fee_wei");
    }
    return s;
}

}  // namespace

bool ScenarioResult::genuine() const
{
    return verdict.is_object() && verdict.value("verdict", "") == "Genuine";
}

bool ScenarioResult::passed() const
{
    for (const auto& s : steps)
        if (!s.success) return false;
    const bool pre_ship_unknown = pre_ship_verdict.is_object() && pre_ship_verdict.value("verdict", "") == "Unknown" &&
                                  pre_ship_verdict.value("reason", json()).is_string() &&
                                  pre_ship_verdict["reason"] == "NotYetShipped";
    const bool shipped = product.is_object() && product.value("status", "") == "Shipped" &&
                         product.value("order_status", "") == "Complete";
    return genuine() && pre_ship_unknown && shipped;
}

ScenarioResult run_lifecycle(NodeClient& client, const ScenarioOptions& options)
{
    ScenarioResult r;
    const auto mfr = scenario_key(options.seed, 1);
    const auto seller = scenario_key(options.seed, 2);
    const Address mfr_addr = crypto::derive_address(mfr.public_key);
    const Address seller_addr = crypto::derive_address(seller.public_key);
    r.manufacturer = mfr_addr.to_text();
    r.seller = seller_addr.to_text();

    const auto genesis = client.get("/v1/blocks/0");
    if (!genesis.ok()) throw TransportError("cannot read genesis: " + genesis.error());
    const auto deploy = node::receipt_from_json(genesis.body["receipts"].at(0));
    r.steps.push_back({"Deploy Contract", "DeployContract", deploy.gas_used, deploy.fee_wei, deploy.success, ""});

    for (const auto& to : {mfr_addr, seller_addr}) {
        const auto f = client.post("/v1/faucet", json{{"address", to.to_text()}, {"amount_wei", wei_to_string(options.funding_wei)}});
        if (!f.ok()) throw TransportError("faucet refused: " + f.error());
    }
    const auto produced = client.post("/v1/blocks/produce");
    if (!produced.ok()) throw TransportError("block production failed: " + produced.error());

    auto create = send_transaction(client, mfr, chain::CreateCompany{"Scenario Goods", options.min_fee_wei}, 0);
    r.steps.push_back(record("Adding New Company", "CreateCompany", create));
    if (!create.succeeded()) return r;
    const Address company = node::get_address(*create.receipt, "company");
    r.company = company.to_text();

    auto enroll = send_transaction(client, mfr, chain::EnrollProduct{company, "Chronograph", options.price_wei, options.stock}, 0);
    r.steps.push_back(record("Product Enrollment", "EnrollProduct", enroll));
    if (!enroll.succeeded()) return r;
    r.product_id = node::get_u64(*enroll.receipt, "product_id");

    auto reg = send_transaction(client, seller, chain::RegisterSeller{company}, options.min_fee_wei);
    r.steps.push_back(record("Seller Registration", "RegisterSeller", reg));
    auto buy = send_transaction(client, seller, chain::BuyProduct{company, r.product_id, "Corner Shop", 1}, options.price_wei);
    r.steps.push_back(record("Buying Product", "BuyProduct", buy));

    const std::string product_path = "/v1/companies/" + r.company + "/products/" + std::to_string(r.product_id);
    const auto pre = client.get(product_path + "/qr");
    if (!pre.ok()) throw TransportError("cannot issue QR payload: " + pre.error());
    r.pre_ship_payload = node::get_string(pre.body, "payload");
    r.pre_ship_verdict = client.post("/v1/qr/verify", json{{"payload", r.pre_ship_payload}}).body;

    auto ship = send_transaction(client, mfr, chain::DistributeProduct{company, r.product_id}, 0);
    r.steps.push_back(record("Product Distribution", "DistributeProduct", ship));

    const auto qr = client.get(product_path + "/qr");
    if (!qr.ok()) throw TransportError("cannot issue QR payload: " + qr.error());
    r.payload = node::get_string(qr.body, "payload");
    r.verdict = client.post("/v1/qr/verify", json{{"payload", r.payload}}).body;
    r.product = client.get(product_path).body;
    r.state_root = node::get_string(client.get("/v1/chain/head").body, "state_root");

    const auto costs = client.get("/v1/costs");
    if (costs.ok()) {
        r.eth_usd_rate_micro = parse_decimal_scaled(node::get_string(costs.body, "eth_usd_rate"), 6).value_or(0);
    }
    return r;
}

json scenario_to_json(const ScenarioResult& r)
{
    json steps = json::array();
    Wei total = 0;
    std::uint64_t gas = 0;
    for (const auto& s : r.steps) {
        total += s.fee_wei;
        gas += s.gas;
        steps.push_back(json{
            {"description", s.description},
            {"action", s.action},
            {"gas", s.gas},
            {"fee_wei", wei_to_string(s.fee_wei)},
            {"fee_eth", format_eth(s.fee_wei)},
            {"fee_usd", r.eth_usd_rate_micro ? json(format_fixed(s.fee_wei * r.eth_usd_rate_micro, 24, 2)) : json(nullptr)},
            {"success", s.success},
            {"error", s.error.empty() ? json(nullptr) : json(s.error)},
        });
    }
    return json{
        {"passed", r.passed()},
        {"manufacturer", r.manufacturer},
        {"seller", r.seller},
        {"company", r.company},
        {"product_id", r.product_id},
        {"steps", std::move(steps)},
        {"totals",
         {{"gas", gas},
          {"fee_wei", wei_to_string(total)},
          {"fee_eth", format_eth(total)},
          {"fee_usd", r.eth_usd_rate_micro ? json(format_fixed(total * r.eth_usd_rate_micro, 24, 2)) : json(nullptr)}}},
        {"pre_ship_payload", r.pre_ship_payload},
        {"pre_ship_verdict", r.pre_ship_verdict},
        {"payload", r.payload},
        {"verdict", r.verdict},
        {"product", r.product},
        {"state_root", r.state_root},
    };
}

}  // namespace pchain::cli
