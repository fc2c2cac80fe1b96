// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <pchain/chain/block_log.hpp>
#include <pchain/chain/executor.hpp>
#include <pchain/cli/scenario.hpp>
#include <pchain/node/cost_report.hpp>
#include <pchain/node/http_server.hpp>
#include <pchain/qr/payload.hpp>
#include <pchain/vm/contract.hpp>

#include "support/harness.hpp"

using namespace pchain;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Check {
public:
    explicit Check(std::ostringstream& detail) : detail_(detail) {}
    bool operator()(bool condition, const std::string& what)
    {
        if (!condition && failures_++ < 5) detail_ << "[" << what << "] ";
        return condition;
    }
    bool ok() const { return failures_ == 0; }
    int failures() const { return failures_; }

private:
    std::ostringstream& detail_;
    int failures_ = 0;
};

fs::path scratch_dir(const std::string& name)
{
    auto p = fs::temp_directory_path() / ("pchain-accept-" + std::to_string(::getpid()) + "-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

// ---------------------------------------------------------------------------

Outcome fee_table()
{
    std::ostringstream d;
    Check check(d);
    const auto report = node::build_cost_report(vm::GasSchedule{}, 3'106'720'000);
    const std::array<std::pair<const char*, const char*>, 5> expected{{
        {"Adding New Company", "0.001069"},
        {"Seller Registration", "0.000046"},
        {"Product Enrollment", "0.000209"},
        {"Buying Product", "0.000042"},
        {"Product Distribution", "0.000056"},
    }};
    const std::array<std::uint64_t, 5> gas{1068597, 45755, 208571, 41581, 55578};
    check(report.rows.size() == 6, "six rows");
    for (std::size_t i = 0; i < expected.size() && report.rows.size() == 6; ++i) {
        const auto& row = report.rows[i + 1];
        check(row.description == expected[i].first, "row order");
        check(row.gas == gas[i], row.description + " gas");
        check(row.fee_eth == expected[i].second, row.description + " fee " + row.fee_eth);
    }
    if (!report.rows.empty()) {
        check(report.rows[0].gas == 133405, "deploy gas");
        check(report.rows[0].annotation.has_value(), "deploy annotation");
    }

    // The same fees are charged by actual execution.
    test::Harness h;
    const auto mfr = test::key_from_byte(1);
    const auto seller = test::key_from_byte(2);
    h.fund(test::address_of(mfr), kWeiPerEth);
    h.fund(test::address_of(seller), kWeiPerEth);
    h.produce();
    const auto create = h.run(mfr, chain::CreateCompany{"Acme", 10});
    const Address c = *create.company;
    const auto reg = h.run(seller, chain::RegisterSeller{c}, 10);
    const auto enroll = h.run(mfr, chain::EnrollProduct{c, "Watch", 100, 2});
    const auto buy = h.run(seller, chain::BuyProduct{c, 0, "Shop", 1}, 100);
    const auto ship = h.run(mfr, chain::DistributeProduct{c, 0});
    const std::array<const vm::ExecutionReceipt*, 5> receipts{&create, &reg, &enroll, &buy, &ship};
    for (std::size_t i = 0; i < receipts.size(); ++i) {
        check(receipts[i]->success, "receipt success");
        check(format_eth(receipts[i]->fee_wei) == expected[i].second, std::string(expected[i].first) + " receipt fee");
    }
    check(h.store().blocks()[0].receipts.at(0).gas_used == 133405, "genesis deploy receipt");
    if (check.ok()) d << "rows 2-6 = 0.001069/0.000046/0.000209/0.000042/0.000056 ETH, deploy annotated";
    return {check.ok(), d.str()};
}

Outcome usd_total()
{
    std::ostringstream d;
    Check check(d);
    const auto config = node::parse_config("eth_usd_rate = 3106.72\n");
    const auto report = node::build_cost_report(vm::GasSchedule{}, config.eth_usd_rate_micro);
    const auto cents = parse_decimal_scaled(report.totals.reference_fee_usd, 2);
    check(cents.has_value(), "parse total");
    const long long value = cents ? static_cast<long long>(*cents) : 0;
    check(std::llabs(value - 856) <= 2, "total $" + report.totals.reference_fee_usd);
    check(report.totals.reference_fee_eth == "0.002755", "reference ETH total " + report.totals.reference_fee_eth);
    d << "total $" << report.totals.reference_fee_usd << " for " << report.totals.reference_fee_eth
      << " ETH at 3106.72 USD/ETH (target 8.56 +/- 0.02)";
    return {check.ok(), d.str()};
}

Outcome lifecycle()
{
    std::ostringstream d;
    Check check(d);
    node::NodeConfig config;
    node::Node n(config);
    node::HttpServer server(n);
    const int port = server.bind("127.0.0.1", 0);
    server.listen_in_background();
    cli::NodeClient client("http://127.0.0.1:" + std::to_string(port));
    const auto r = cli::run_lifecycle(client, cli::ScenarioOptions{.seed = 1});
    server.stop();

    for (const auto& s : r.steps) check(s.success, s.description + " " + s.error);
    check(r.genuine(), "final verdict " + r.verdict.dump());
    check(r.product.value("status", "") == "Shipped" && r.product.value("order_status", "") == "Complete",
          "product state");
    check(r.pre_ship_verdict.value("verdict", "") == "Unknown" && r.pre_ship_verdict.value("reason", std::string()) == "NotYetShipped",
          "pre-ship verdict " + r.pre_ship_verdict.dump());
    check(r.passed(), "scenario passed");
    if (check.ok()) d << "Genuine, (Shipped, Complete); pre-ship payload Unknown(NotYetShipped)";
    return {check.ok(), d.str()};
}

// ---------------------------------------------------------------------------

struct FuzzWorld {
    chain::ChainParams params;
    crypto::KeyPair producer = test::key_from_byte(0xaa);
    vm::WorldState state;
    std::vector<crypto::KeyPair> manufacturers, sellers, outsiders;
    std::vector<Address> companies;
    std::map<Address, const crypto::KeyPair*> key_of;
};

Outcome authorization_fuzz()
{
    std::ostringstream d;
    Check check(d);
    FuzzWorld w;
    w.params.producer = test::address_of(w.producer);
    for (std::uint8_t i = 0; i < 4; ++i) {
        w.manufacturers.push_back(test::key_from_byte(0x10 + i));
        w.sellers.push_back(test::key_from_byte(0x20 + i));
        w.outsiders.push_back(test::key_from_byte(0x30 + i));
    }
    for (auto* group : {&w.manufacturers, &w.sellers, &w.outsiders})
        for (const auto& k : *group) w.state.balances[test::address_of(k)] = 1000 * kWeiPerEth;

    std::mt19937_64 rng(2024);
    auto pick = [&](std::uint64_t n) { return rng() % n; };
    const Wei min_fee = 1'000'000;

    auto tx_for = [&](const crypto::KeyPair& key, chain::Action action, Wei value, std::int64_t nonce_shift = 0) {
        const Address sender = test::address_of(key);
        const auto nonce = static_cast<std::uint64_t>(static_cast<std::int64_t>(w.state.nonce_of(sender)) + nonce_shift);
        return chain::sign_transaction(chain::Transaction{sender, nonce, std::move(action), value}, key);
    };
    auto must = [&](const chain::SignedTransaction& stx) {
        const auto r = chain::execute_transaction(w.state, stx, w.params);
        if (!r || !r->success) throw std::runtime_error("fuzz setup transaction failed");
        return *r;
    };

    // Four companies, every regular seller registered with each.
    for (std::size_t i = 0; i < 4; ++i) {
        const auto r = must(tx_for(w.manufacturers[i], chain::CreateCompany{"Co" + std::to_string(i), min_fee}, 0));
        w.companies.push_back(*r.company);
        for (const auto& s : w.sellers) must(tx_for(s, chain::RegisterSeller{*r.company}, min_fee));
    }

    std::map<std::string, int> fired;
    int rejected = 0, root_identical = 0, vm_identical = 0, accepted = 0, mempool_nonce = 0;
    std::set<std::string> categories_hit;

    auto available = [&](const Address& company, vm::OrderStatus want) -> std::optional<std::uint64_t> {
        const auto& ps = w.state.companies.at(company).products;
        std::vector<std::uint64_t> ids;
        for (const auto& p : ps)
            if (p.order_status == want && (want != vm::OrderStatus::None || p.stock > 0)) ids.push_back(p.id);
        if (ids.empty()) return std::nullopt;
        return ids[pick(ids.size())];
    };

    for (int i = 0; i < 10'000; ++i) {
        const std::size_t ci = pick(4);
        const Address company = w.companies[ci];
        const auto& mfr = w.manufacturers[ci];
        const auto& seller = w.sellers[pick(4)];
        const auto& outsider = w.outsiders[pick(4)];
        const auto& wrong = pick(2) ? w.manufacturers[(ci + 1 + pick(3)) % 4] : outsider;

        chain::SignedTransaction stx;
        const auto category = pick(9);
        auto open = available(company, vm::OrderStatus::None);
        auto pending = available(company, vm::OrderStatus::Pending);
        if ((category == 4 || category == 5) && !open) {
            stx = tx_for(mfr, chain::EnrollProduct{company, "P", Wei(100 + pick(900)), 1 + pick(3)}, 0);
        } else {
            switch (category) {
            case 0: // valid progress
                if (pending && pick(2)) {
                    stx = tx_for(mfr, chain::DistributeProduct{company, *pending}, 0);
                } else if (open && pick(2)) {
                    const auto& p = w.state.companies.at(company).products[*open];
                    stx = tx_for(seller, chain::BuyProduct{company, *open, "Shop", 1}, p.price_wei);
                } else {
                    stx = tx_for(mfr, chain::EnrollProduct{company, "P", Wei(100 + pick(900)), 1 + pick(3)}, 0);
                }
                break;
            case 1: // enrollment by someone other than the manufacturer
                stx = tx_for(wrong, chain::EnrollProduct{company, "Fake", 100, 1}, 0);
                break;
            case 2: // distribution by someone other than the manufacturer
                stx = tx_for(pick(2) ? seller : wrong, chain::DistributeProduct{company, pending.value_or(0)}, 0);
                break;
            case 3: // registration below the minimum fee
                stx = tx_for(outsider, chain::RegisterSeller{company}, pick(min_fee));
                break;
            case 4: { // purchase below price x quantity
                const auto& p = w.state.companies.at(company).products[*open];
                const std::uint64_t qty = 1 + pick(p.stock);
                stx = tx_for(seller, chain::BuyProduct{company, *open, "Shop", qty}, pick(static_cast<std::uint64_t>(p.price_wei * qty)));
                break;
            }
            case 5: // purchase by an unregistered account
                stx = tx_for(outsider, chain::BuyProduct{company, *open, "Gray", 1}, 1000);
                break;
            case 6: // distribution without a pending order
                if (open) {
                    stx = tx_for(mfr, chain::DistributeProduct{company, *open}, 0);
                } else {
                    stx = tx_for(mfr, chain::DistributeProduct{company, 1'000'000}, 0);
                }
                break;
            case 7: { // replayed or skipped nonce
                const auto& k = pick(2) ? seller : mfr;
                const auto current = static_cast<std::int64_t>(w.state.nonce_of(test::address_of(k)));
                const std::int64_t shift = (current > 0 && pick(2)) ? -1 - static_cast<std::int64_t>(pick(std::min<std::int64_t>(current, 3)))
                                                                   : 1 + static_cast<std::int64_t>(pick(3));
                stx = tx_for(k, chain::EnrollProduct{company, "P", 100, 1}, 0, shift);
                break;
            }
            default: // value attached to a non-payable call
                stx = tx_for(mfr, chain::EnrollProduct{company, "P", 100, 1}, 1 + pick(1000));
                break;
            }
        }

        const vm::WorldState before = w.state;
        const auto root_before = vm::compute_state_root(before);
        const auto receipt = chain::execute_transaction(w.state, stx, w.params);

        if (receipt && receipt->success) {
            ++accepted;
            continue;
        }
        ++rejected;
        if (!receipt) {
            // Not executable: admission refuses it and nothing moves.
            fired["nonce"] += 1;
            chain::Mempool pool(w.params, std::make_shared<const vm::WorldState>(before));
            if (pool.submit(stx).error == Errc::NonceGap) ++mempool_nonce;
            if (check(w.state == before && vm::compute_state_root(w.state) == root_before, "non-executable changed state"))
                ++root_identical;
            ++vm_identical;
            continue;
        }
        fired[std::string(chain::action_name(chain::tag_of(stx.tx.action))) + "." + std::string(to_string(receipt->error))] += 1;

        // Contract level: a rejected call leaves the state root untouched.
        vm::WorldState vm_state = before;
        const auto vm_out = vm::apply_action(vm_state, vm::CallContext{stx.tx.sender, stx.tx.nonce, stx.tx.value_wei},
                                             stx.tx.action, w.params.producer);
        if (check(!vm_out.ok() && vm::compute_state_root(vm_state) == root_before && vm_state == before,
                  "contract state changed on " + std::string(to_string(receipt->error))))
            ++vm_identical;

        // Chain level: only the fee and nonce move.
        vm::WorldState expected = before;
        expected.balances[stx.tx.sender] -= receipt->fee_wei;
        if (expected.balances[stx.tx.sender] == 0) expected.balances.erase(stx.tx.sender);
        if (receipt->fee_wei > 0) expected.balances[w.params.producer] += receipt->fee_wei;
        expected.nonces[stx.tx.sender] += 1;
        if (check(w.state == expected && vm::compute_state_root(w.state) == vm::compute_state_root(expected),
                  "rejected tx moved more than its fee"))
            ++root_identical;
    }

    const std::array<const char*, 7> guards{
        "EnrollProduct.Unauthorized",       // manufacturer-only enrollment
        "DistributeProduct.Unauthorized",   // manufacturer-only distribution
        "DistributeProduct.NoPendingOrder", // distribution needs a pending order
        "RegisterSeller.FeeTooLow",         // minimum registration fee
        "BuyProduct.NotRegisteredSeller",   // registered sellers only
        "BuyProduct.ValueTooLow",           // value covers price x quantity
        "nonce",                            // replay / gap
    };
    int min_fired = std::numeric_limits<int>::max();
    for (const char* g : guards) {
        check(fired[g] >= 100, std::string(g) + " fired " + std::to_string(fired[g]));
        min_fired = std::min(min_fired, fired[g]);
    }
    check(mempool_nonce == fired["nonce"], "mempool accepted a bad nonce");
    check(rejected > 5000, "too few rejections");
    d << rejected << " rejected of 10000, state unchanged in " << vm_identical << "/" << rejected
      << " (contract) and fee-only in " << root_identical << "/" << rejected << " (chain); min guard count " << min_fired;
    return {check.ok(), d.str()};
}

// ---------------------------------------------------------------------------

Outcome determinism()
{
    std::ostringstream d;
    Check check(d);
    const auto dir = scratch_dir("determinism");
    std::uint64_t total_txs = 0;
    int matched_roots = 0, matched_tips = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        test::Harness h;
        test::ScenarioGenerator gen(seed);
        gen.fund_all(h);
        const int count = 1 + static_cast<int>(gen.pick(45));
        int sent = 0;
        while (sent < count) {
            const int batch = std::min<int>(count - sent, 1 + static_cast<int>(gen.pick(10)));
            for (int i = 0; i < batch; ++i) gen.step(h);
            sent += batch;
            h.produce();
        }
        std::uint64_t txs = 0;
        for (const auto& b : h.store().blocks()) txs += b.transactions.size();
        check(txs <= 50, "seed " + std::to_string(seed) + " has " + std::to_string(txs) + " txs");
        total_txs += txs;

        chain::ChainStore replay(h.params());
        bool applied = true;
        for (std::size_t i = 1; i < h.store().blocks().size() && applied; ++i)
            applied = check(replay.apply_block(h.store().blocks()[i]).ok(), "replay rejected a block");
        const bool same_bytes = vm::canonical_state_bytes(replay.state()) == vm::canonical_state_bytes(h.state());
        if (check(applied && same_bytes && replay.tip().state_root == h.store().tip().state_root,
                  "seed " + std::to_string(seed) + " root differs"))
            ++matched_roots;

        const auto path = dir / ("s" + std::to_string(seed) + ".log");
        chain::persist(h.store(), path);
        const auto loaded = chain::load(path, h.params());
        if (check(loaded.tip().block_hash == h.store().tip().block_hash && loaded.state() == h.state(),
                  "seed " + std::to_string(seed) + " tip differs after reload"))
            ++matched_tips;
    }
    fs::remove_all(dir);
    d << matched_roots << "/100 identical state roots, " << matched_tips << "/100 tip hashes after reload ("
      << total_txs << " txs)";
    return {check.ok(), d.str()};
}

Outcome tamper_evidence()
{
    std::ostringstream d;
    Check check(d);
    test::Harness h;
    test::ScenarioGenerator gen(77);
    gen.fund_all(h);
    while (h.store().height() < 10) {
        for (int i = 0; i < 4; ++i) gen.step(h);
        h.produce();
    }
    const auto bytes = chain::encode_log(h.store());

    // Record start offsets.
    std::vector<std::size_t> starts;
    for (std::size_t pos = chain::kLogMagic.size(); pos < bytes.size();) {
        starts.push_back(pos);
        const std::uint32_t len = (std::uint32_t(bytes[pos]) << 24) | (std::uint32_t(bytes[pos + 1]) << 16) |
                                  (std::uint32_t(bytes[pos + 2]) << 8) | bytes[pos + 3];
        pos += 4 + len;
    }
    auto height_of = [&](std::size_t offset) -> std::uint64_t {
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < starts.size(); ++i)
            if (offset >= starts[i]) h = i;
        return h;
    };

    std::mt19937_64 rng(4242);
    std::set<std::size_t> positions;
    while (positions.size() < 200) positions.insert(rng() % bytes.size());
    int detected = 0;
    for (const auto pos : positions) {
        Bytes mutated = bytes;
        mutated[pos] ^= static_cast<std::uint8_t>(1 + rng() % 255);
        const auto affected = height_of(pos);
        std::optional<std::uint64_t> reported;
        try {
            const auto store = chain::decode_log(mutated, h.params());
            const auto v = chain::validate_chain(store);
            if (!v.ok()) reported = v.height;
        } catch (const CorruptLogError& e) {
            reported = e.height();
        }
        if (check(reported.has_value() && *reported <= affected,
                  "byte " + std::to_string(pos) + " (height " + std::to_string(affected) + ") " +
                      (reported ? "reported at " + std::to_string(*reported) : "undetected")))
            ++detected;
    }
    d << detected << "/200 flips detected at or before the affected height (" << h.store().height() << " blocks, "
      << bytes.size() << " bytes)";
    return {check.ok(), d.str()};
}

Outcome qr_soundness()
{
    std::ostringstream d;
    Check check(d);
    test::Harness h;
    const auto mfr = test::key_from_byte(1);
    const auto seller = test::key_from_byte(2);
    h.fund(test::address_of(mfr), kWeiPerEth);
    h.fund(test::address_of(seller), kWeiPerEth);
    h.produce();
    const Address company = *h.run(mfr, chain::CreateCompany{"Acme", 10}).company;
    h.run(mfr, chain::EnrollProduct{company, "Watch", 100, 5});
    h.run(mfr, chain::EnrollProduct{company, "Clock", 100, 5});
    h.run(seller, chain::RegisterSeller{company}, 10);
    h.run(seller, chain::BuyProduct{company, 0, "Shop", 1}, 100);
    h.run(mfr, chain::DistributeProduct{company, 0});
    const auto genuine = qr::issue_payload(h.store(), company, 0);
    if (!check(qr::verify(genuine, h.store()).genuine(), "baseline payload is not Genuine")) return {false, d.str()};

    std::vector<std::pair<std::string, qr::QRPayload>> mutants;
    auto add = [&](const std::string& field, const std::function<void(qr::QRPayload&)>& f) {
        qr::QRPayload p = genuine;
        f(p);
        mutants.emplace_back(field + "(raw)", p);
        qr::seal(p);
        mutants.emplace_back(field, p);
    };
    auto address_mutations = [&](const std::string& field, Address qr::QRPayload::*member) {
        for (int bit = 0; bit < 160; ++bit) {
            add(field, [&](qr::QRPayload& p) {
                auto raw = (p.*member).bytes();
                raw[static_cast<std::size_t>(bit / 8)] ^= static_cast<std::uint8_t>(1u << (bit % 8));
                p.*member = Address(raw);
            });
        }
        for (const auto& other : {test::address_of(mfr), test::address_of(seller), company, Address{}}) {
            if (other != genuine.*member) add(field, [&](qr::QRPayload& p) { p.*member = other; });
        }
    };
    for (int v = 0; v < 256; ++v)
        if (v != qr::kPayloadVersion) add("version", [&](qr::QRPayload& p) { p.version = static_cast<std::uint8_t>(v); });
    address_mutations("company", &qr::QRPayload::company);
    for (std::uint64_t id : {1ULL, 2ULL, 7ULL, ~0ULL}) add("product_id", [&](qr::QRPayload& p) { p.product_id = id; });
    address_mutations("manufacturer", &qr::QRPayload::manufacturer);
    address_mutations("owner_address", &qr::QRPayload::owner_address);
    for (std::size_t i = 0; i < genuine.owner_name.size(); ++i) {
        for (int delta : {1, -1, 32}) {
            add("owner_name", [&](qr::QRPayload& p) { p.owner_name[i] = static_cast<char>(p.owner_name[i] + delta); });
        }
    }
    add("owner_name", [](qr::QRPayload& p) { p.owner_name += " "; });
    add("owner_name", [](qr::QRPayload& p) { p.owner_name.pop_back(); });
    add("owner_name", [](qr::QRPayload& p) { p.owner_name.clear(); });
    add("owner_name", [](qr::QRPayload& p) { p.owner_name = "Acme"; });
    add("status", [](qr::QRPayload& p) { p.status = vm::ProductStatus::ReadyToGo; });
    add("order_status", [](qr::QRPayload& p) { p.order_status = vm::OrderStatus::None; });
    add("order_status", [](qr::QRPayload& p) { p.order_status = vm::OrderStatus::Pending; });
    for (std::uint64_t hgt = 0; hgt <= h.store().height() + 50; ++hgt) {
        if (hgt != genuine.issued_at_height) add("issued_at_height", [&](qr::QRPayload& p) { p.issued_at_height = hgt; });
    }
    add("issued_at_height", [](qr::QRPayload& p) { p.issued_at_height = ~0ULL; });
    for (int byte = 0; byte < 4; ++byte) {
        for (int bit = 0; bit < 8; ++bit) {
            qr::QRPayload p = genuine;
            p.checksum[static_cast<std::size_t>(byte)] ^= static_cast<std::uint8_t>(1u << bit);
            mutants.emplace_back("checksum", p);
        }
    }

    std::map<std::string, int> per_field;
    int never_genuine = 0;
    for (const auto& [field, p] : mutants) {
        per_field[field.substr(0, field.find('('))] += 1;
        bool is_genuine = false;
        try {
            const auto decoded = qr::decode_text(qr::encode_text(p));
            is_genuine = qr::verify(decoded, h.store()).genuine();
        } catch (const Error&) {
        }
        if (check(!is_genuine, field + " mutation verified Genuine")) ++never_genuine;
    }
    for (const char* f : {"version", "company", "product_id", "manufacturer", "owner_address", "owner_name", "status",
                          "order_status", "issued_at_height", "checksum"})
        check(per_field[f] >= 1, std::string("no mutation of ") + f);
    d << never_genuine << "/" << mutants.size() << " mutants rejected across " << per_field.size() << " fields";
    return {check.ok(), d.str()};
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"fee-table", 1, fee_table},
        {"usd-total", 1, usd_total},
        {"lifecycle", 5, lifecycle},
        {"authorization-fuzz", 30, authorization_fuzz},
        {"determinism", 60, determinism},
        {"tamper-evidence", 30, tamper_evidence},
        {"qr-soundness", 5, qr_soundness},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_seconds;
        const bool pass = out.pass && in_time;
        if (!pass) ++failed;
        std::printf("%s  %-20s %6.2fs (limit %2.0fs)  %s%s\n", pass ? "PASS" : "FAIL", c.name, secs, c.budget_seconds,
                    out.detail.c_str(), in_time ? "" : " [over time budget]");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
