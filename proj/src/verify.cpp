#include "eprweyl/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include "eprweyl/bell_search.hpp"
#include "eprweyl/gns.hpp"
#include "eprweyl/matrix_surrogate.hpp"
#include "eprweyl/sampling.hpp"
#include "eprweyl/serialization.hpp"

namespace eprweyl {

namespace {

using nlohmann::json;

struct Outcome {
    json measured;
    bool pass;
};

class SuiteRunner {
public:
    explicit SuiteRunner(VerificationReport& report) : report_(report) {}

    void run(std::string name, std::string anchor, const json& inputs, double tol,
             const std::function<Outcome()>& body) {
        CheckRecord rec;
        rec.name = std::move(name);
        rec.anchor = std::move(anchor);
        rec.inputs_digest = inputs_digest(inputs);
        rec.tolerance = tol;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = body();
            rec.measured = std::move(o.measured);
            rec.pass = o.pass;
        } catch (const std::exception& e) {
            rec.measured = {{"error", e.what()}};
            rec.pass = false;
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        report_.records.push_back(std::move(rec));
    }

private:
    VerificationReport& report_;
};

// Derives an independent stream per check so adding a check leaves the others unchanged.
std::uint64_t stream(std::uint64_t seed, std::uint64_t tag) { return seed * 0x9E3779B97F4A7C15ULL + tag * 0xD1B54A32D192ED03ULL; }

std::vector<PhasePoint> negated(std::span<const PhasePoint> pts) {
    std::vector<PhasePoint> out;
    for (const auto& x : pts) out.push_back(-x);
    return out;
}

std::vector<PhasePoint> keys(const WeylPolynomial& p) {
    std::vector<PhasePoint> out;
    for (const auto& [x, c] : p.terms()) out.push_back(x);
    return out;
}

} // namespace

VerificationReport run_verify_all(const StateFunctional& state, const SuiteOptions& opt) {
    VerificationReport report;
    report.state = state.to_json();
    SuiteRunner suite(report);
    const bool epr = state.kind() == StateKind::Epr;
    const json base = {{"state", state.to_json()}, {"seed", opt.seed}};
    constexpr double sqrt2 = std::numbers::sqrt2;
    auto inputs = [&](const json& extra) {
        json j = base;
        j.update(extra);
        return j;
    };

    // --- states -----------------------------------------------------------
    suite.run("kernel_psd", "existence: F(x,y) = G(x-y) exp(-i(s+s)(x,y)) is a positive definite kernel",
              inputs({{"batteries", opt.kernel_batteries}, {"points", opt.kernel_points}}), 1e-10, [&] {
                  Sampler rng(stream(opt.seed, 1));
                  double worst = 1e300;
                  for (int b = 0; b < opt.kernel_batteries; ++b) {
                      const auto pts = rng.clustered_points(static_cast<std::size_t>(opt.kernel_points));
                      worst = std::min(worst, psd_check(kernel_matrix(state, pts), 1e-10).min_eigenvalue);
                  }
                  return Outcome{{{"min_eigenvalue", worst}}, worst >= -1e-10};
              });

    suite.run("normalization_hermiticity", "G(0) = 1 and G(-x) = conj G(x)", inputs({{"samples", 200}}),
              1e-12, [&] {
                  Sampler rng(stream(opt.seed, 2));
                  double worst = 0.0;
                  for (int i = 0; i < 200; ++i) {
                      const PhasePoint x = rng.coin() ? rng.epr_manifold_point() : rng.point(4);
                      worst = std::max(worst, std::abs(state.eval_point(-x) - std::conj(state.eval_point(x))));
                  }
                  const Complex g0 = state.eval_point(PhasePoint::zero(4));
                  return Outcome{{{"g0_re", g0.real()}, {"g0_im", g0.imag()}, {"hermiticity_defect", worst}},
                                 g0 == Complex(1.0) && worst <= 1e-12};
              });

    suite.run("gram_form_identity", "omega(P*P) equals the kernel quadratic form",
              inputs({{"polynomials", opt.gram_form_polynomials}}), 1e-9, [&] {
                  Sampler rng(stream(opt.seed, 3));
                  double worst = 0.0, min_value = 1e300;
                  bool positive = true;
                  for (int i = 0; i < opt.gram_form_polynomials; ++i) {
                      const WeylPolynomial p = rng.polynomial(4, 3);
                      const PositivityReport pos = positivity_check(state, p);
                      positive = positive && pos.pass;
                      min_value = std::min(min_value, pos.value);
                      const auto pts = keys(p);
                      ComplexVector z(static_cast<Eigen::Index>(pts.size()));
                      for (std::size_t k = 0; k < pts.size(); ++k) z(static_cast<Eigen::Index>(k)) = p.coeff(pts[k]);
                      const auto m = kernel_matrix(state, negated(pts));
                      const Complex form = (z.adjoint() * m.matrix() * z)(0, 0);
                      worst = std::max(worst, std::abs(Complex(pos.value, pos.imag) - form));
                  }
                  return Outcome{{{"max_deviation", worst}, {"min_value", min_value}}, positive && worst <= 1e-9};
              });

    if (epr) {
        suite.run("support_classes", "the support relation is an equivalence relation; F = alpha_j conj(alpha_k) on classes",
                  inputs({{"batteries", opt.kernel_batteries}, {"points", opt.kernel_points}}), 1e-10, [&] {
                      Sampler rng(stream(opt.seed, 1));
                      CheckResult cocycle, alpha;
                      std::size_t max_classes = 0;
                      for (int b = 0; b < opt.kernel_batteries; ++b) {
                          const auto pts = rng.clustered_points(static_cast<std::size_t>(opt.kernel_points));
                          const auto m = kernel_matrix(state, pts);
                          const auto part = support_relation(pts, state);
                          max_classes = std::max(max_classes, part.classes.size());
                          const auto r = rank_one_class_check(m, part, 1e-10);
                          cocycle.absorb(r.deviation, 1e-10);
                          for (const auto& cls : part.classes)
                              for (std::size_t j : cls)
                                  for (std::size_t k : cls)
                                      alpha.absorb(std::abs(m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) -
                                                            class_phase(state, pts[j]) * std::conj(class_phase(state, pts[k]))),
                                                   1e-10);
                      }
                      return Outcome{{{"cocycle_deviation", cocycle.deviation},
                                      {"alpha_factorization_deviation", alpha.deviation},
                                      {"max_classes", max_classes}},
                                     cocycle.pass && alpha.pass};
                  });

        suite.run("uniqueness_support", "rho(W(a,b,c,d)) = 0 off {c=-a, d=b} and exp(i(a lambda + b mu)) on it",
                  inputs({{"monomials", opt.uniqueness_monomials}}), 1e-12, [&] {
                      Sampler rng(stream(opt.seed, 4));
                      CheckResult all;
                      int on = 0;
                      for (int i = 0; i < opt.uniqueness_monomials; ++i) {
                          const bool on_manifold = rng.coin();
                          const PhasePoint x = on_manifold ? rng.epr_manifold_point() : rng.point(4);
                          on += on_epr_manifold(x) ? 1 : 0;
                          const auto r = uniqueness_support_check(state, x, 1e-12);
                          all.absorb(r.deviation, 1e-12);
                          if (!r.pass) all.pass = false;
                      }
                      return Outcome{{{"max_deviation", all.deviation}, {"on_manifold", on}}, all.pass};
                  });

        suite.run("multiplicativity", "omega is multiplicative on the abelian algebra of W(s,0)xW(-s,0), W(0,t)xW(0,t)",
                  inputs({{"pairs", opt.multiplicativity_pairs}}), 1e-10, [&] {
                      Sampler rng(stream(opt.seed, 5));
                      CheckResult all;
                      for (int i = 0; i < opt.multiplicativity_pairs; ++i) {
                          const Rational s = rng.rational(), t = rng.rational();
                          std::vector<WeylPolynomial> probes = {WeylPolynomial::monomial(rng.point(4)),
                                                                WeylPolynomial::monomial(rng.epr_manifold_point()),
                                                                rng.polynomial(4, 2)};
                          const auto r = multiplicativity_check(state, s, t, probes, 1e-10);
                          all.absorb(r.deviation, 1e-10);
                      }
                      return Outcome{{{"max_deviation", all.deviation}}, all.pass};
                  });

        suite.run("traciality", "omega is tracial on each tensor factor",
                  inputs({{"pairs", opt.traciality_pairs}}), 1e-10, [&] {
                      Sampler rng(stream(opt.seed, 6));
                      CheckResult all;
                      for (int i = 0; i < opt.traciality_pairs; ++i) {
                          const PhasePoint a = rng.point(2);
                          const PhasePoint b = rng.coin(0.3) ? -a : rng.point(2);
                          for (int slot : {1, 2}) all.absorb(traciality_check(state, a, b, slot, 1e-10).deviation, 1e-10);
                          const auto p = rng.polynomial(2, 2), q = rng.polynomial(2, 2);
                          for (int slot : {1, 2}) all.absorb(trace_vector_check(state, p, q, slot, 1e-10).deviation, 1e-10);
                      }
                      return Outcome{{{"max_deviation", all.deviation}}, all.pass};
                  });

        suite.run("collinearity", "|<psi, phi>| = 1 with phase exp(it) exp(ic lambda) exp(-id mu), t = (ad+bc)/2",
                  inputs({{"quadruples", opt.collinearity_quadruples}}), 1e-12, [&] {
                      Sampler rng(stream(opt.seed, 7));
                      double mod_dev = 0.0, phase_dev = 0.0;
                      bool ok = true;
                      for (int i = 0; i < opt.collinearity_quadruples; ++i) {
                          const auto r = collinearity_check(rng.rational(), rng.rational(), rng.rational(), rng.rational(),
                                                            state, 1e-12);
                          mod_dev = std::max(mod_dev, std::abs(r.modulus - 1.0));
                          phase_dev = std::max(phase_dev, r.phase_error);
                          ok = ok && r.pass;
                      }
                      return Outcome{{{"modulus_deviation", mod_dev}, {"phase_deviation", phase_dev}}, ok};
                  });

        suite.run("gram_orthonormality", "vectors W(x) x I Omega for distinct x are orthonormal",
                  inputs({{"grid", "j/2, k/3 for j,k in -2..2"}}), 0.0, [&] {
                      std::vector<PhasePoint> pts;
                      for (int j = -2; j <= 2; ++j)
                          for (int k = -2; k <= 2; ++k) pts.push_back(PhasePoint{Rational(j, 2), Rational(k, 3), 0, 0});
                      const auto frame = build_frame(state, pts);
                      const double dev =
                          (frame.gram().matrix() - ComplexMatrix::Identity(frame.gram().size(), frame.gram().size()))
                              .cwiseAbs()
                              .maxCoeff();
                      return Outcome{{{"max_deviation", dev}, {"points", pts.size()}}, dev == 0.0};
                  });
    }

    // --- weyl_core / gns engine consistency ------------------------------------
    suite.run("engine_algebra", "Weyl relations: associativity, anti-multiplicative involution, commutation phases",
              inputs({{"samples", opt.engine_samples}}), 1e-10, [&] {
                  Sampler rng(stream(opt.seed, 8));
                  double assoc = 0.0, invol = 0.0, comm = 0.0;
                  for (int i = 0; i < opt.engine_samples; ++i) {
                      const int dim = i % 2 ? 4 : 2;
                      const auto p = rng.polynomial(dim, 4), q = rng.polynomial(dim, 4), r = rng.polynomial(dim, 4);
                      assoc = std::max(assoc, one_norm(weyl_multiply(weyl_multiply(p, q), r) -
                                                       weyl_multiply(p, weyl_multiply(q, r))));
                      invol = std::max(invol, one_norm(adjoint(weyl_multiply(p, q)) - weyl_multiply(adjoint(q), adjoint(p))));
                      const Rational s = rng.rational();
                      const PhasePoint x = rng.point(4);
                      const PhasePoint u{s, 0, -s, 0};
                      const auto ux = weyl_multiply(WeylPolynomial::monomial(u), WeylPolynomial::monomial(x));
                      const auto xu = weyl_multiply(WeylPolynomial::monomial(x), WeylPolynomial::monomial(u));
                      const Complex expected = std::polar(1.0, (s * (x[1] - x[3])).to_double());
                      comm = std::max(comm, std::abs(ux.coeff(u + x) - expected * xu.coeff(u + x)));
                  }
                  return Outcome{{{"associativity", assoc}, {"involution", invol}, {"commutation_phase", comm}},
                                 assoc <= 1e-10 && invol <= 1e-10 && comm <= 1e-12};
              });

    suite.run("norm_sandwich", "frame compression norm <= one_norm", inputs({{"samples", 20}}), 1e-8, [&] {
        Sampler rng(stream(opt.seed, 9));
        double worst_gap = -1e300;
        for (int i = 0; i < 20; ++i) {
            std::vector<PhasePoint> pts = {PhasePoint::zero(4)};
            while (pts.size() < 6) {
                const PhasePoint x = rng.coin() ? rng.epr_manifold_point() : rng.point(4, 2, 1);
                if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
            }
            const auto frame = build_frame(state, pts);
            const auto p = rng.polynomial(4, 3);
            const auto nb = norm_lower_bound(state, frame, p);
            worst_gap = std::max(worst_gap, nb.value - one_norm(p));
        }
        return Outcome{{{"max_lower_minus_upper", worst_gap}}, worst_gap <= 1e-8};
    });

    // --- bell_search ---------------------------------------------------------
    suite.run("bell_soundness", "Bell values of certified contractions lie in [-sqrt2, sqrt2]; identity gives 1",
              inputs({{"candidates", opt.bell_random_candidates}}), 1e-9, [&] {
                  Sampler rng(stream(opt.seed, 10));
                  double worst = 0.0;
                  for (int i = 0; i < opt.bell_random_candidates; ++i) {
                      BellCandidate c;
                      c.a1 = rng.contraction(2);
                      c.a2 = rng.contraction(2);
                      c.b1 = rng.contraction(2);
                      c.b2 = rng.contraction(2);
                      worst = std::max(worst, std::abs(bell_value(state, c)));
                  }
                  const double id = bell_value(state, BellCandidate::identity());
                  return Outcome{{{"max_abs_value", worst}, {"identity_value", id}},
                                 worst <= sqrt2 + 1e-9 && std::abs(id - 1.0) <= 1e-15};
              });

    if (epr) {
        suite.run("bell_monomial_family", "monomial Bell family reaches its closed-form maximum sqrt2/2",
                  inputs({{"family", "(1,1)"}}), 1e-6, [&] {
                      SearchConfig cfg = SearchConfig::monomial_family(1, 1);
                      cfg.seed = opt.seed;
                      const auto res = optimize_bell(state, cfg);
                      Sampler rng(stream(opt.seed, 11));
                      double agree = 0.0;
                      for (int i = 0; i < 100; ++i) {
                          const FamilyAngles ang{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4),
                                                 rng.uniform(-4, 4)};
                          agree = std::max(agree, std::abs(monomial_family_value(1, 1, ang, state) -
                                                           bell_value(state, monomial_family_candidate(1, 1, ang))));
                      }
                      const double target = sqrt2 / 2;
                      return Outcome{{{"value", res.value},
                                      {"target", target},
                                      {"max_evaluated", res.max_evaluated},
                                      {"closed_form_agreement", agree}},
                                     std::abs(res.value - target) <= 1e-6 && res.max_evaluated <= sqrt2 + 1e-9 &&
                                         agree <= 1e-10};
                  });

        suite.run("weyl_doubles", "rho((U - U')*(U - U')) = 0 for U' = exp(i(a lambda + b mu)) I x W(a,-b)",
                  inputs({{"samples", opt.doubles}}), 1e-12, [&] {
                      Sampler rng(stream(opt.seed, 12));
                      double dev = 0.0, sa = 0.0, control = 1e300;
                      for (int i = 0; i < opt.doubles; ++i) {
                          const Rational a = rng.rational();
                          Rational b = rng.rational();
                          if (b.is_zero()) b = Rational(1, 3);
                          const auto d = weyl_double(a, b, state);
                          dev = std::max({dev, std::abs(d.deviation), std::abs(d.closed_form)});
                          sa = std::max(sa, std::abs(d.self_adjoint_deviation));
                          const auto bad = double_deviation(a, b, PhasePoint{a, b}, d.phase, state);
                          control = std::min(control, bad.deviation);
                      }
                      return Outcome{{{"max_deviation", dev}, {"max_self_adjoint_deviation", sa}, {"min_control_deviation", control}},
                                     dev <= 1e-12 && sa <= 1e-10 && control >= 0.01};
                  });
    }

    // --- matrix_surrogate (state independent) -----------------------------------
    suite.run("surrogate_chsh", "CHSH value 2cos(pi/4) = sqrt2 in every even dimension",
              inputs({{"dims", "2..64 even"}}), 1e-12, [&] {
                  double worst = 0.0;
                  for (int m = 2; m <= kMaxModelDim; m += 2)
                      worst = std::max(worst, std::abs(chsh_value(build_model(m)) - sqrt2));
                  const double control = chsh_value(build_model(2), {0.0, std::numbers::pi / 2, std::numbers::pi / 4,
                                                                     std::numbers::pi / 4});
                  return Outcome{{{"max_deviation", worst}, {"value_m2", chsh_value(build_model(2))}, {"control", control}},
                                 worst <= 1e-12 && control < sqrt2 - 0.1};
              });

    suite.run("surrogate_correlation", "<Omega, A(t1)A(t2) Omega> = cos(t1 - t2)",
              inputs({{"step_m2", 0.01}, {"step_m8", 0.05}}), 1e-12, [&] {
                  const double e2 = correlation_grid_error(build_model(2), 0.01);
                  const double e8 = correlation_grid_error(build_model(8), 0.05);
                  const double grid_max = chsh_grid_max(build_model(2), 0.05);
                  return Outcome{{{"max_error_m2", e2}, {"max_error_m8", e8}, {"chsh_grid_max", grid_max}},
                                 std::max(e2, e8) <= 1e-12 && grid_max <= sqrt2 + 1e-9};
              });

    suite.run("surrogate_structure", "Omega is a cyclic separating trace vector; gamma(A) Omega = A Omega",
              inputs({{"dims", {2, 4, 8}}}), 1e-12, [&] {
                  Sampler rng(stream(opt.seed, 13));
                  double trace_dev = 0.0, gamma_dev = 0.0, anti_dev = 0.0;
                  bool ranks = true;
                  for (int m : {2, 4, 8}) {
                      const auto model = build_model(m);
                      ranks = ranks && cyclic_rank(model) == m * m;
                      for (int i = 0; i < 10; ++i) {
                          const ComplexMatrix a = rng.matrix(m), b = rng.matrix(m);
                          trace_dev = std::max(trace_dev, std::abs(expectation_first(model, a * b) -
                                                                   expectation_first(model, b * a)));
                          gamma_dev = std::max(gamma_dev, (apply_second(gamma(model, a), model.omega()) -
                                                           apply_first(a, model.omega())).norm());
                          anti_dev = std::max(anti_dev, (gamma(model, a * b) - gamma(model, b) * gamma(model, a)).norm());
                      }
                  }
                  return Outcome{{{"trace_deviation", trace_dev}, {"gamma_deviation", gamma_dev},
                                  {"anti_multiplicativity", anti_dev}, {"full_cyclic_rank", ranks}},
                                 ranks && trace_dev <= 1e-12 && gamma_dev <= 1e-12 && anti_dev <= 1e-12};
              });

    suite.run("matrix_doubles", "every A has the unique double gamma(A*) with <Omega,(A - A')^2 Omega> = 0",
              inputs({{"dims", {2, 4, 8}}}), 1e-12, [&] {
                  Sampler rng(stream(opt.seed, 14));
                  double dev = 0.0, control = 1e300;
                  for (int m : {2, 4, 8}) {
                      const auto model = build_model(m);
                      for (int i = 0; i < 10; ++i) {
                          const ComplexMatrix a = rng.self_adjoint_matrix(m);
                          const auto d = double_of(model, a);
                          dev = std::max(dev, std::abs(d.deviation));
                          const ComplexMatrix shifted = d.double_op + 0.1 * ComplexMatrix::Identity(m, m);
                          control = std::min(control, double_deviation(model, a, shifted));
                      }
                  }
                  return Outcome{{{"max_deviation", dev}, {"min_control_deviation", control}},
                                 dev <= 1e-12 && control >= 0.01 - 1e-12};
              });

    return report;
}

} // namespace eprweyl
