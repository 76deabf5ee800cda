// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "eprweyl/bell_search.hpp"
#include "eprweyl/commands.hpp"
#include "eprweyl/gns.hpp"
#include "eprweyl/matrix_surrogate.hpp"
#include "eprweyl/sampling.hpp"
#include "eprweyl/states.hpp"
#include "oracles.hpp"

using namespace eprweyl;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// 1. Surrogate CHSH value through the command, every even dimension 2..64.
Outcome surrogate_chsh() {
    Outcome o;
    double worst = 0.0, slowest = 0.0;
    for (int m = 2; m <= kMaxModelDim; m += 2) {
        CommandOptions opts;
        opts.dim = m;
        std::ostringstream out, err;
        const auto t0 = Clock::now();
        const int code = cmd_surrogate(opts, out, err);
        slowest = std::max(slowest, seconds_since(t0));
        const auto j = nlohmann::json::parse(out.str());
        double v = 0.0;
        for (const auto& r : j.at("records"))
            if (r.at("name") == "chsh_value") v = r.at("measured").at("value").get<double>();
        worst = std::max(worst, std::abs(v - std::numbers::sqrt2));
        if (code != kExitPass) o.pass = false;
    }
    o.pass = o.pass && worst <= 1e-12 && slowest < 1.0;
    o.detail = fmt("max |chsh - sqrt2| = %.3g, slowest run %.3f s", worst, slowest);
    return o;
}

// 2. Correlation law over a 1e-2 grid, pair by pair.
Outcome correlation_law() {
    const auto model = build_model(2);
    const auto grid = angle_grid(0.01);
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double t1 : grid)
        for (double t2 : grid) worst = std::max(worst, std::abs(correlation(model, t1, t2) - std::cos(t1 - t2)));
    const double secs = seconds_since(t0);
    return {worst < 1e-12 && secs < 5.0,
            fmt("max error %.3g over %.0f angle pairs", worst, static_cast<double>(grid.size() * grid.size())) +
                fmt(", %.2f s", secs)};
}

// 3. Kernel positivity batteries.
Outcome kernel_positivity() {
    Sampler rng(2025);
    std::vector<StateFunctional> states;
    for (int k = 0; k < 5; ++k) states.push_back(StateFunctional::epr(rng.uniform(-10, 10), rng.uniform(-10, 10)));
    const auto t0 = Clock::now();
    double min_eig = 1e300;
    for (int b = 0; b < 50; ++b) {
        const auto pts = rng.clustered_points(64);
        const auto rep = psd_check(kernel_matrix(states[static_cast<std::size_t>(b % 5)], pts), 1e-10);
        min_eig = std::min(min_eig, rep.min_eigenvalue);
    }
    const double secs = seconds_since(t0);
    return {min_eig >= -1e-10 && secs < 30.0, fmt("min eigenvalue %.3g, %.2f s", min_eig, secs)};
}

// 4. Support trichotomy for random monomials, half of them on the manifold.
Outcome support_uniqueness() {
    Sampler rng(4);
    bool pass = true;
    double worst = 0.0;
    int on = 0;
    for (int i = 0; i < 200; ++i) {
        const auto s = StateFunctional::epr(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const PhasePoint x = i % 2 ? rng.epr_manifold_point() : rng.point(4);
        on += on_epr_manifold(x) ? 1 : 0;
        const auto r = uniqueness_support_check(s, x, 1e-12);
        pass = pass && r.pass;
        worst = std::max(worst, r.deviation);
    }
    return {pass, fmt("max deviation %.3g, %.0f monomials on the support", worst, on)};
}

// 5. Traciality and multiplicativity.
Outcome trace_and_multiplicativity() {
    Sampler rng(5);
    bool pass = true;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto s = StateFunctional::epr(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const auto tr = traciality_check(s, rng.point(2), rng.point(2), 1 + i % 2, 1e-10);
        std::vector<WeylPolynomial> probes{rng.polynomial(4, 3)};
        const auto mu = multiplicativity_check(s, rng.rational(), rng.rational(), probes, 1e-10);
        pass = pass && tr.pass && mu.pass;
        worst = std::max({worst, tr.deviation, mu.deviation});
    }
    return {pass, fmt("max deviation %.3g over 100 pairs", worst)};
}

// 6. Collinearity of W(a,b)xW(c,d) Omega and W(a+c,b-d)xI Omega.
Outcome collinearity() {
    Sampler rng(6);
    double worst_mod = 0.0, worst_phase = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double lambda = rng.uniform(-5, 5), mu = rng.uniform(-5, 5);
        const Rational a = rng.rational(), b = rng.rational(), c = rng.rational(), d = rng.rational();
        const auto r = collinearity_check(a, b, c, d, StateFunctional::epr(lambda, mu), 1e-12);
        const double t = ((a * d + b * c) * Rational(1, 2)).to_double();
        const Complex expected = std::polar(1.0, t + c.to_double() * lambda - d.to_double() * mu);
        worst_mod = std::max(worst_mod, std::abs(std::abs(r.inner) - 1.0));
        worst_phase = std::max(worst_phase, std::abs(r.inner - expected));
    }
    return {worst_mod <= 1e-12 && worst_phase <= 1e-12,
            fmt("max ||<psi,phi>| - 1| = %.3g, max phase error %.3g", worst_mod, worst_phase)};
}

// 7. Bell search calibration and soundness.
Outcome bell_search() {
    const double target = std::numbers::sqrt2 / 2;
    const auto t0 = Clock::now();
    const auto s = StateFunctional::epr();
    const auto result = optimize_bell(s, SearchConfig::monomial_family(1, 1));
    const double engine = bell_value(s, result.best);
    const double grid = oracle::chsh_phase_grid_max(1e-3) / 4;
    double max_seen = result.max_evaluated;

    // soundness on wider supports and shifted states
    Sampler rng(7);
    for (int k = 0; k < 3; ++k) {
        SearchConfig cfg;
        const std::vector<PhasePoint> sup{PhasePoint{0, 0}, PhasePoint{1, 1}, PhasePoint{-1, -1},
                                          PhasePoint{-1, 1}, PhasePoint{1, -1}};
        cfg.supports = {sup, sup, sup, sup};
        cfg.restarts = 4;
        cfg.seed = 100 + static_cast<std::uint64_t>(k);
        const auto r = optimize_bell(StateFunctional::epr(rng.uniform(-3, 3), rng.uniform(-3, 3)), cfg);
        max_seen = std::max(max_seen, r.max_evaluated);
    }
    const double secs = seconds_since(t0);
    const bool pass = std::abs(result.value - target) <= 1e-6 && std::abs(engine - result.value) <= 1e-10 &&
                      std::abs(grid - target) <= 1e-5 && grid <= target + 1e-12 &&
                      max_seen <= kTsirelsonBound + 1e-9 && secs < 60.0;
    return {pass, fmt("optimum %.15g (grid %.12g)", result.value, grid) +
                      fmt(", max evaluated %.6g, %.2f s", max_seen, secs)};
}

// 8. Doubles and their negative controls.
Outcome doubles() {
    Sampler rng(8);
    double worst = 0.0, weakest_control = 1e300;
    for (int i = 0; i < 100; ++i) {
        const auto s = StateFunctional::epr(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const Rational a = rng.rational(), b = rng.rational();
        const auto d = weyl_double(a, b, s);
        worst = std::max({worst, d.deviation, d.self_adjoint_deviation});
        if (!b.is_zero()) {
            // partner at (a, b) instead of (a, -b)
            weakest_control =
                std::min(weakest_control, double_deviation(a, b, PhasePoint{a, b}, d.phase, s).deviation);
        }
    }
    for (int m : {2, 4, 8}) {
        const auto model = build_model(m);
        for (int i = 0; i < 20; ++i) {
            const auto a = rng.self_adjoint_matrix(m);
            const auto d = double_of(model, a);
            worst = std::max(worst, d.deviation);
            const ComplexMatrix perturbed = d.double_op + 0.1 * ComplexMatrix::Identity(m, m);
            weakest_control = std::min(weakest_control, double_deviation(model, a, perturbed));
        }
    }
    // the 0.01 control is 0.1^2 up to rounding
    return {worst <= 1e-12 && weakest_control >= 0.01 - 1e-12,
            fmt("max deviation %.3g, smallest control deviation %.15g", worst, weakest_control)};
}

// 9. Engine self-consistency.
Outcome engine_consistency() {
    Sampler rng(9);
    double gram = 0.0, algebra = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto s = i % 4 == 3 ? StateFunctional::reference_regular()
                                  : StateFunctional::epr(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const auto pts = rng.clustered_points(6);
        WeylPolynomial p(4);
        std::vector<PhasePoint> neg;
        ComplexVector z(static_cast<Eigen::Index>(pts.size()));
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Complex c(rng.uniform(-1, 1), rng.uniform(-1, 1));
            p.add_term(pts[k], c);
            neg.push_back(-pts[k]);
            z(static_cast<Eigen::Index>(k)) = c;
        }
        const Complex quad = (z.adjoint() * kernel_matrix(s, neg).matrix() * z)(0, 0);
        const auto rep = positivity_check(s, p);
        gram = std::max(gram, std::abs(quad - Complex(rep.value, rep.imag)));
    }
    for (int i = 0; i < 200; ++i) {
        const int dim = i % 2 ? 4 : 2;
        const auto p = rng.polynomial(dim, 3), q = rng.polynomial(dim, 3), r = rng.polynomial(dim, 3);
        algebra = std::max(algebra, one_norm((p * q) * r - p * (q * r)));
        algebra = std::max(algebra, one_norm(adjoint(p * q) - adjoint(q) * adjoint(p)));
    }
    return {gram <= 1e-9 && algebra <= 1e-10,
            fmt("max |omega(P*P) - z*Mz| = %.3g, max algebra defect %.3g", gram, algebra)};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 surrogate CHSH", surrogate_chsh},
        {"2 correlation law", correlation_law},
        {"3 kernel positivity", kernel_positivity},
        {"4 support and uniqueness", support_uniqueness},
        {"5 trace vector and multiplicativity", trace_and_multiplicativity},
        {"6 cyclicity collinearity", collinearity},
        {"7 Bell search soundness", bell_search},
        {"8 doubles", doubles},
        {"9 engine self-consistency", engine_consistency},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  criterion %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
