#include <doctest.h>

#include <sstream>

#include "eprweyl/commands.hpp"
#include "eprweyl/errors.hpp"
#include "eprweyl/report.hpp"
#include "eprweyl/verify.hpp"

using namespace eprweyl;

namespace {

std::string data(const std::string& name) { return std::string(EPRWEYL_DATA_DIR) + "/" + name; }

CommandOptions with_state(const std::string& file) {
    CommandOptions o;
    if (!file.empty()) o.state_file = data(file);
    return o;
}

struct Run {
    int code;
    std::string out, err;
};

template <class F>
Run run(F&& f) {
    std::ostringstream out, err;
    const int code = f(out, err);
    return {code, out.str(), err.str()};
}

VerificationReport sample_report() {
    VerificationReport r;
    r.state = StateFunctional::epr(0.5, 1.0).to_json();
    r.records.push_back({"kernel_psd", "kernel positivity", inputs_digest({{"n", 3}}), {{"min_eigenvalue", 0.0}},
                         1e-10, true, 1.5});
    r.records.push_back({"chsh_value", "maximal correlation", inputs_digest({{"dim", 2}}), {{"value", 1.41}}, 1e-12,
                         false, 0.25});
    r.details = {{"note", "x"}};
    return r;
}

} // namespace

TEST_SUITE("report_commands") {

TEST_CASE("report json round trip") {
    const auto r = sample_report();
    CHECK_FALSE(r.pass());
    CHECK(r.failing() == std::vector<std::string>{"chsh_value"});
    const auto j = r.to_json();
    CHECK(j.at("pass") == false);
    CHECK(VerificationReport::from_json(j) == r);
}

TEST_CASE("report json rejects inconsistent or malformed input") {
    auto j = sample_report().to_json();
    j["pass"] = true;
    CHECK_THROWS_AS(VerificationReport::from_json(j), UsageError);
    auto k = sample_report().to_json();
    k["records"][0].erase("anchor");
    CHECK_THROWS_AS(VerificationReport::from_json(k), UsageError);
}

TEST_CASE("digest and timing strip") {
    const auto d = inputs_digest({{"a", 1}});
    CHECK(d.size() == 16);
    CHECK(d == inputs_digest({{"a", 1}}));
    CHECK(d != inputs_digest({{"a", 2}}));
    const auto s = strip_timing(sample_report().to_json());
    CHECK_FALSE(s["records"][0].contains("wall_ms"));
    CHECK(s["records"][0].contains("measured"));
}

TEST_CASE("eval command") {
    auto r = run([](auto& o, auto& e) {
        return cmd_eval(with_state("epr_lambda1.json"), data("position_monomial.json"), o, e);
    });
    CHECK(r.code == kExitPass);
    CHECK(r.out == "(0.54030230586814, 0.841470984807897)\n");
    r = run([](auto& o, auto& e) { return cmd_eval(with_state(""), data("identity4.json"), o, e); });
    CHECK(r.out == "(1, 0)\n");
    r = run([](auto& o, auto& e) { return cmd_eval(with_state(""), data("monomial2.json"), o, e); });
    CHECK(r.code == kExitUsage);
    CHECK_FALSE(r.err.empty());
    r = run([](auto& o, auto& e) { return cmd_eval(with_state(""), data("missing.json"), o, e); });
    CHECK(r.code == kExitUsage);
}

TEST_CASE("psd command") {
    auto r = run([](auto& o, auto& e) { return cmd_psd(with_state(""), data("two_points.json"), o, e); });
    CHECK(r.code == kExitPass);
    const auto rep = VerificationReport::from_json(nlohmann::json::parse(r.out));
    CHECK(rep.pass());
    r = run([](auto& o, auto& e) {
        return cmd_psd(with_state("corrupted_kernel.json"), data("two_points.json"), o, e);
    });
    CHECK(r.code == kExitFail);
    r = run([](auto& o, auto& e) { return cmd_psd(with_state(""), data("duplicate_points.json"), o, e); });
    CHECK(r.code == kExitUsage);
}

TEST_CASE("bell command is deterministic apart from timing") {
    auto opts = with_state("epr_shifted.json");
    const auto a = run([&](auto& o, auto& e) { return cmd_bell(opts, data("monomial_family.json"), o, e); });
    const auto b = run([&](auto& o, auto& e) { return cmd_bell(opts, data("monomial_family.json"), o, e); });
    CHECK(a.code == kExitPass);
    const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    CHECK(strip_timing(ja) == strip_timing(jb));
    CHECK(ja["details"]["value"].get<double>() == doctest::Approx(0.7071067811865476).epsilon(1e-9));
    opts.seed = 99;
    const auto c = run([&](auto& o, auto& e) { return cmd_bell(opts, data("monomial_family.json"), o, e); });
    CHECK(c.code == kExitPass);
}

TEST_CASE("surrogate command") {
    CommandOptions opts;
    opts.dim = 4;
    auto r = run([&](auto& o, auto& e) { return cmd_surrogate(opts, o, e); });
    CHECK(r.code == kExitPass);
    CHECK(VerificationReport::from_json(nlohmann::json::parse(r.out)).pass());
    opts.dim = 5;
    r = run([&](auto& o, auto& e) { return cmd_surrogate(opts, o, e); });
    CHECK(r.code == kExitUsage);
}

TEST_CASE("verify-all outcomes") {
    auto r = run([](auto& o, auto& e) { return cmd_verify_all(with_state("epr_shifted.json"), o, e); });
    CHECK(r.code == kExitPass);
    r = run([](auto& o, auto& e) { return cmd_verify_all(with_state("regular.json"), o, e); });
    CHECK(r.code == kExitPass);
    r = run([](auto& o, auto& e) { return cmd_verify_all(with_state("corrupted_kernel.json"), o, e); });
    CHECK(r.code == kExitFail);
    CHECK(r.err.find("kernel_psd") != std::string::npos);
    const auto rep = VerificationReport::from_json(nlohmann::json::parse(r.out));
    CHECK_FALSE(rep.pass());
}

TEST_CASE("reduced suite records every applicable check") {
    SuiteOptions small;
    small.kernel_batteries = 2;
    small.kernel_points = 16;
    small.uniqueness_monomials = 20;
    small.multiplicativity_pairs = small.traciality_pairs = small.collinearity_quadruples = 10;
    small.gram_form_polynomials = 10;
    small.engine_samples = 5;
    small.bell_random_candidates = 20;
    small.doubles = 10;
    const auto epr = run_verify_all(StateFunctional::epr(1.0, 2.0), small);
    CHECK(epr.pass());
    const auto regular = run_verify_all(StateFunctional::reference_regular(), small);
    CHECK(regular.pass());
    CHECK(regular.records.size() < epr.records.size());
    for (const auto& rec : epr.records) {
        CHECK_FALSE(rec.anchor.empty());
        CHECK(rec.inputs_digest.size() == 16);
    }
}

} // TEST_SUITE
