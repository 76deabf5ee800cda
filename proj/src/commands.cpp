#include "eprweyl/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>

#include "eprweyl/bell_search.hpp"
#include "eprweyl/errors.hpp"
#include "eprweyl/matrix_surrogate.hpp"
#include "eprweyl/report.hpp"
#include "eprweyl/sampling.hpp"
#include "eprweyl/serialization.hpp"
#include "eprweyl/states.hpp"
#include "eprweyl/verify.hpp"

namespace eprweyl {

namespace {

using nlohmann::json;

StateFunctional load_state(const CommandOptions& opts) {
    if (opts.state_file.empty()) return StateFunctional::epr();
    return StateFunctional::from_json(read_json_file(opts.state_file));
}

void emit(const CommandOptions& opts, const json& doc, std::ostream& out) {
    if (opts.out_file.empty()) {
        out << doc.dump(2) << '\n';
        return;
    }
    std::ofstream f(opts.out_file);
    if (!f) throw UsageError("cannot write '" + opts.out_file + "'");
    f << doc.dump(2) << '\n';
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << '\n';
        return kExitFail;
    }
}

template <class F>
CheckRecord timed_record(std::string name, std::string anchor, const json& inputs, double tol, F&& body) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.anchor = std::move(anchor);
    rec.inputs_digest = inputs_digest(inputs);
    rec.tolerance = tol;
    const auto t0 = std::chrono::steady_clock::now();
    body(rec);
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::string format_value(Complex v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.15g, %.15g)", v.real(), v.imag());
    return buf;
}

} // namespace

int cmd_eval(const CommandOptions& opts, const std::string& polynomial_file, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const StateFunctional state = load_state(opts);
        const WeylPolynomial p = polynomial_from_json(read_json_file(polynomial_file));
        if (p.dim() != 4) throw UsageError("eval expects a polynomial over R^4, got dimension " + std::to_string(p.dim()));
        const Complex v = state.eval_poly(p);
        out << format_value(v) << '\n';
        if (!opts.out_file.empty())
            emit(opts, {{"tool_version", kToolVersion}, {"state", state.to_json()}, {"re", v.real()}, {"im", v.imag()}},
                 out);
        return kExitPass;
    });
}

int cmd_psd(const CommandOptions& opts, const std::string& points_file, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const StateFunctional state = load_state(opts);
        const auto points = points_from_json(read_json_file(points_file));
        if (points.size() > kMaxPsdPoints)
            throw ResourceError("psd accepts at most " + std::to_string(kMaxPsdPoints) + " points");
        for (const auto& x : points)
            if (x.dim() != 4) throw UsageError("psd expects points of R^4");
        const HermitianMatrix m = kernel_matrix(state, points);

        VerificationReport rep;
        rep.state = state.to_json();
        const json inputs = {{"state", state.to_json()}, {"points", points_to_json(points)}};
        rep.records.push_back(timed_record("kernel_psd", "existence: the kernel F is positive definite", inputs, opts.tol,
                                           [&](CheckRecord& r) {
                                               const auto psd = psd_check(m, opts.tol);
                                               r.measured = {{"min_eigenvalue", psd.min_eigenvalue},
                                                             {"points", points.size()}};
                                               r.pass = psd.pass;
                                           }));
        std::optional<SupportPartition> partition;
        rep.records.push_back(timed_record(
            "support_relation", "F(x_j,x_k) != 0 is an equivalence relation", inputs, 0.0, [&](CheckRecord& r) {
                try {
                    partition = support_relation(points, state);
                    json sizes = json::array();
                    for (const auto& c : partition->classes) sizes.push_back(c.size());
                    r.measured = {{"classes", partition->classes.size()}, {"class_sizes", sizes}};
                    r.pass = true;
                } catch (const VerificationError& e) {
                    r.measured = {{"error", e.what()}};
                    r.pass = false;
                }
            }));
        if (state.kind() == StateKind::Epr && partition) {
            rep.records.push_back(timed_record("rank_one_classes", "F = alpha_j conj(alpha_k) within each support class",
                                               inputs, opts.tol, [&](CheckRecord& r) {
                                                   const auto c = rank_one_class_check(m, *partition, opts.tol);
                                                   r.measured = {{"max_deviation", c.deviation}};
                                                   r.pass = c.pass;
                                               }));
        }
        emit(opts, rep.to_json(), out);
        return rep.pass() ? kExitPass : kExitFail;
    });
}

int cmd_bell(const CommandOptions& opts, const std::string& config_file, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const StateFunctional state = load_state(opts);
        SearchConfig cfg = SearchConfig::from_json(read_json_file(config_file));
        if (opts.seed) cfg.seed = *opts.seed;

        VerificationReport rep;
        rep.state = state.to_json();
        const json inputs = {{"state", state.to_json()}, {"config", cfg.to_json()}};
        SearchResult res;
        rep.records.push_back(timed_record("bell_search", "certified lower bound on the maximal Bell correlation", inputs,
                                           1e-10, [&](CheckRecord& r) {
                                               res = optimize_bell(state, cfg);
                                               const double engine = bell_value(state, res.best);
                                               r.measured = {{"value", res.value}, {"engine_value", engine}};
                                               r.pass = std::abs(engine - res.value) <= 1e-10;
                                           }));
        rep.records.push_back(timed_record("bell_upper_bound", "Bell values never exceed sqrt2", inputs, 1e-9,
                                           [&](CheckRecord& r) {
                                               r.measured = {{"max_evaluated", res.max_evaluated},
                                                             {"bound", std::numbers::sqrt2}};
                                               r.pass = res.max_evaluated <= std::numbers::sqrt2 + 1e-9;
                                           }));
        json trace = json::array();
        for (const auto& [it, v] : res.trace) trace.push_back({it, v});
        rep.details = {{"config", cfg.to_json()},
                       {"value", res.value},
                       {"best_restart", res.best_restart},
                       {"evaluations", res.evaluations},
                       {"candidate", res.best.to_json()},
                       {"trace", trace}};
        emit(opts, rep.to_json(), out);
        return rep.pass() ? kExitPass : kExitFail;
    });
}

int cmd_surrogate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const MatrixModel model = build_model(opts.dim);
        const int m = opts.dim;
        const std::uint64_t seed = opts.seed.value_or(1);
        VerificationReport rep;
        rep.state = {{"model", "matrix"}, {"dim", m}};
        const json inputs = {{"dim", m}, {"seed", seed}};

        const double grid_step = m <= 16 ? 0.01 : 0.05;
        rep.records.push_back(timed_record("correlation_law", "<Omega, A(t1)A(t2) Omega> = cos(t1 - t2)", inputs, 1e-12,
                                           [&](CheckRecord& r) {
                                               const double e = correlation_grid_error(model, grid_step);
                                               r.measured = {{"max_error", e}, {"grid_step", grid_step}};
                                               r.pass = e <= 1e-12;
                                           }));
        const ChshAngles angles = optimal_chsh_angles();
        rep.records.push_back(timed_record("chsh_value", "maximal Bell correlation 2cos(pi/4) = sqrt2", inputs, 1e-12,
                                           [&](CheckRecord& r) {
                                               const double v = chsh_value(model, angles);
                                               r.measured = {{"value", v},
                                                             {"expected", std::numbers::sqrt2},
                                                             {"angles", {angles.a1, angles.a2, angles.b1, angles.b2}}};
                                               r.pass = std::abs(v - std::numbers::sqrt2) <= 1e-12;
                                           }));
        rep.records.push_back(timed_record("doubles", "every self-adjoint A has the double gamma(A)", inputs, 1e-12,
                                           [&](CheckRecord& r) {
                                               Sampler rng(seed);
                                               double worst = 0.0;
                                               for (int i = 0; i < 8; ++i)
                                                   worst = std::max(worst, std::abs(double_of(model, rng.self_adjoint_matrix(m)).deviation));
                                               r.measured = {{"max_deviation", worst}, {"samples", 8}};
                                               r.pass = worst <= 1e-12;
                                           }));
        emit(opts, rep.to_json(), out);
        return rep.pass() ? kExitPass : kExitFail;
    });
}

int cmd_verify_all(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const StateFunctional state = load_state(opts);
        SuiteOptions suite;
        if (opts.seed) suite.seed = *opts.seed;
        const VerificationReport rep = run_verify_all(state, suite);
        emit(opts, rep.to_json(), out);
        if (rep.pass()) return kExitPass;
        err << "failing checks:";
        for (const auto& name : rep.failing()) err << ' ' << name;
        err << '\n';
        return kExitFail;
    });
}

} // namespace eprweyl
