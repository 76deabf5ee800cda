#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eprweyl/bell_search.hpp"
#include "eprweyl/errors.hpp"
#include "eprweyl/sampling.hpp"
#include "eprweyl/serialization.hpp"
#include "oracles.hpp"

using namespace eprweyl;

namespace {

WeylPolynomial w(const PhasePoint& x, Complex c = 1.0) { return WeylPolynomial::monomial(x, c); }

const double kHalfRoot2 = std::numbers::sqrt2 / 2;

SearchConfig load_config(const std::string& name) {
    return SearchConfig::from_json(read_json_file(std::string(EPRWEYL_DATA_DIR) + "/" + name));
}

} // namespace

TEST_SUITE("bell_search") {

TEST_CASE("identity candidate") {
    const auto c = BellCandidate::identity();
    CHECK(bell_operator(c) == WeylPolynomial::identity(4));
    CHECK(bell_value(StateFunctional::epr(2.0, 1.0), c) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.term_count() == 4);
}

TEST_CASE("vanishing second observables leave half of A1 B1") {
    BellCandidate c;
    c.a1 = WeylPolynomial::identity(2);
    c.b1 = WeylPolynomial::identity(2);
    CHECK(bell_operator(c) == WeylPolynomial::identity(4, 0.5));
    CHECK(std::abs(bell_value(StateFunctional::epr(), c) - 0.5) < 1e-15);
}

TEST_CASE("candidate validation") {
    BellCandidate c = BellCandidate::identity();
    CHECK_NOTHROW(validate_candidate(c));
    c.a1 = WeylPolynomial::identity(2, 1.5);
    CHECK_THROWS_AS(validate_candidate(c), UsageError);
    c.a1 = w(PhasePoint{1, 0}, 0.5);
    CHECK_THROWS_AS(validate_candidate(c), UsageError);
    c.a1 = WeylPolynomial(4);
    CHECK_THROWS_AS(validate_candidate(c), UsageError);
}

TEST_CASE("monomial family maximum matches the angle grid oracle") {
    const auto s = StateFunctional::epr();
    const auto angles = optimal_family_angles(0.0);
    const double v = bell_value(s, monomial_family_candidate(1, 1, angles));
    CHECK(std::abs(v - kHalfRoot2) < 1e-12);
    const double grid = oracle::chsh_phase_grid_max(1e-3) / 4;
    CHECK(grid <= kHalfRoot2 + 1e-12);
    CHECK(kHalfRoot2 - grid < 1e-5);
}

TEST_CASE("shifted state: the optimal angles absorb the shift") {
    const double lambda = 3.7, mu = -1.2;
    const auto s = StateFunctional::epr(lambda, mu);
    const Rational a(1, 2), b(-3, 4);
    const double kappa = a.to_double() * lambda + b.to_double() * mu;
    const auto angles = optimal_family_angles(kappa);
    CHECK(std::abs(bell_value(s, monomial_family_candidate(a, b, angles)) - kHalfRoot2) < 1e-12);
}

TEST_CASE("property: closed form agrees with the engine on random angles") {
    Sampler rng(42);
    for (int i = 0; i < 100; ++i) {
        const auto s = StateFunctional::epr(rng.uniform(-4, 4), rng.uniform(-4, 4));
        const Rational a = rng.rational(), b = rng.rational();
        if (a.is_zero() && b.is_zero()) continue;
        const FamilyAngles ang{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
        const auto c = monomial_family_candidate(a, b, ang);
        CHECK_NOTHROW(validate_candidate(c));
        CHECK(std::abs(bell_value(s, c) - monomial_family_value(a, b, ang, s)) < 1e-10);
    }
}

TEST_CASE("optimizer reaches the family maximum") {
    const auto s = StateFunctional::epr();
    const auto r = optimize_bell(s, load_config("monomial_family.json"));
    CHECK(std::abs(r.value - kHalfRoot2) < 1e-6);
    CHECK(r.max_evaluated <= kTsirelsonBound + 1e-9);
    CHECK(std::abs(bell_value(s, r.best) - r.value) < 1e-10);
    CHECK_NOTHROW(validate_candidate(r.best));
    REQUIRE_FALSE(r.trace.empty());
    for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].second >= r.trace[k - 1].second);
}

TEST_CASE("optimizer on shifted states and other supports") {
    const auto shifted = StateFunctional::epr(3.7, -1.2);
    auto cfg = SearchConfig::monomial_family(Rational(1, 2), 1);
    cfg.restarts = 4;
    CHECK(std::abs(optimize_bell(shifted, cfg).value - kHalfRoot2) < 1e-6);

    const auto s = StateFunctional::epr();
    CHECK(std::abs(optimize_bell(s, load_config("identity_only.json")).value - 1.0) < 1e-12);
    const auto three = optimize_bell(s, load_config("three_point.json"));
    CHECK(three.value >= kHalfRoot2 - 1e-9);
    CHECK(three.max_evaluated <= kTsirelsonBound + 1e-9);
}

TEST_CASE("optimizer is deterministic for a fixed seed") {
    const auto s = StateFunctional::epr(0.5, 0.25);
    auto cfg = load_config("three_point.json");
    cfg.restarts = 3;
    cfg.max_iters = 300;
    const auto r1 = optimize_bell(s, cfg);
    const auto r2 = optimize_bell(s, cfg);
    CHECK(r1.value == r2.value);
    CHECK(r1.best_restart == r2.best_restart);
    CHECK(r1.best.to_json() == r2.best.to_json());
    CHECK(r1.trace == r2.trace);
    CHECK(r1.evaluations == r2.evaluations);
}

TEST_CASE("search config validation and json") {
    auto cfg = SearchConfig::monomial_family(1, 1);
    CHECK_NOTHROW(cfg.validate());
    const auto back = SearchConfig::from_json(cfg.to_json());
    CHECK(back.supports == cfg.supports);
    CHECK(back.seed == cfg.seed);

    auto bad = cfg;
    bad.supports[0] = {PhasePoint{1, 1}};
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.restarts = 0;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.term_cap = 3;
    CHECK_THROWS_AS(bad.validate(), ResourceError);
    CHECK_THROWS_AS(SearchConfig::from_json(nlohmann::json::parse(R"({"supports": [[], [], []]})")), UsageError);
}

TEST_CASE("property: random normalized candidates respect the bound") {
    Sampler rng(7);
    const auto s = StateFunctional::epr(rng.uniform(-2, 2), rng.uniform(-2, 2));
    for (int i = 0; i < 100; ++i) {
        BellCandidate c;
        c.a1 = rng.contraction(2);
        c.a2 = rng.contraction(2);
        c.b1 = rng.contraction(2);
        c.b2 = rng.contraction(2);
        CHECK_NOTHROW(validate_candidate(c));
        const double v = bell_value(s, c);
        CHECK(std::abs(v) <= kTsirelsonBound + 1e-9);
    }
}

TEST_CASE("Weyl doubles") {
    const auto s = StateFunctional::epr(0.8, -2.0);
    const auto d = weyl_double(1, 2, s);
    CHECK(d.partner == PhasePoint{1, -2});
    CHECK(d.deviation <= 1e-12);
    CHECK(std::abs(d.closed_form) <= 1e-12);
    CHECK(d.self_adjoint_deviation <= 1e-12);

    // the unconjugated partner is a negative control: deviation 2
    const auto bad = double_deviation(1, 2, PhasePoint{1, 2}, d.phase, s);
    CHECK(std::abs(bad.deviation - 2.0) < 1e-12);

    Sampler rng(13);
    for (int i = 0; i < 100; ++i) {
        const auto t = StateFunctional::epr(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const auto r = weyl_double(rng.rational(), rng.rational(), t);
        CHECK(r.deviation <= 1e-12);
        CHECK(r.self_adjoint_deviation <= 1e-12);
    }
}

} // TEST_SUITE
