#include "eprweyl/states.hpp"

#include <cmath>
#include <set>
#include <string>

#include "eprweyl/errors.hpp"

namespace eprweyl {

StateFunctional StateFunctional::epr(double lambda, double mu) { return {StateKind::Epr, lambda, mu}; }

StateFunctional StateFunctional::reference_regular() { return {StateKind::ReferenceRegular, 0.0, 0.0}; }

StateFunctional StateFunctional::with_corrupted_kernel() const {
    StateFunctional s = *this;
    s.corrupted_ = true;
    return s;
}

bool on_epr_manifold(const PhasePoint& x) {
    if (x.dim() != 4) throw UsageError("EPR support test requires a 4-point");
    return (x[0] + x[2]).is_zero() && x[1] == x[3];
}

Complex StateFunctional::eval_point(const PhasePoint& x) const {
    if (x.dim() != 4) throw UsageError("state evaluation requires a point of R^4, got " + x.to_string());
    Complex g;
    if (kind_ == StateKind::Epr) {
        if (!on_epr_manifold(x)) return 0.0;
        if (x.is_zero()) return 1.0;
        g = std::polar(1.0, x[0].to_double() * lambda_ + x[1].to_double() * mu_);
    } else {
        if (x.is_zero()) return 1.0;
        double r2 = 0.0;
        for (double v : x.to_doubles()) r2 += v * v;
        g = std::exp(-r2 / 4.0);
    }
    return corrupted_ ? 2.0 * g : g;
}

Complex StateFunctional::eval_poly(const WeylPolynomial& p) const {
    if (p.dim() != 4) throw UsageError("state evaluation requires a polynomial over R^4");
    Complex sum;
    for (const auto& [x, c] : p.terms()) sum += c * eval_point(x);
    return sum;
}

nlohmann::json StateFunctional::to_json() const {
    nlohmann::json j = {{"kind", kind_ == StateKind::Epr ? "epr" : "regular"}, {"lambda", lambda_}, {"mu", mu_}};
    if (corrupted_) j["corrupt_kernel"] = true;
    return j;
}

StateFunctional StateFunctional::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("state spec must be an object");
    const std::string kind = j.value("kind", "epr");
    double lambda = 0.0, mu = 0.0;
    try {
        lambda = j.value("lambda", 0.0);
        mu = j.value("mu", 0.0);
    } catch (const nlohmann::json::exception&) {
        throw UsageError("state spec lambda/mu must be numbers");
    }
    StateFunctional s = StateFunctional::epr(lambda, mu);
    if (kind == "regular")
        s = StateFunctional::reference_regular();
    else if (kind != "epr")
        throw UsageError("unknown state kind '" + kind + "'");
    if (j.value("corrupt_kernel", false)) s = s.with_corrupted_kernel();
    return s;
}

Complex kernel_value(const StateFunctional& state, const PhasePoint& x, const PhasePoint& y) {
    const Complex g = state.eval_point(x - y);
    if (g == 0.0) return 0.0;
    return g * std::conj(weyl_phase(x, y));
}

HermitianMatrix kernel_matrix(const StateFunctional& state, std::span<const PhasePoint> points) {
    std::set<PhasePoint> seen;
    for (const auto& x : points)
        if (!seen.insert(x).second) throw UsageError("duplicate point " + x.to_string());
    const auto n = static_cast<Eigen::Index>(points.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            m(j, k) = kernel_value(state, points[static_cast<std::size_t>(j)], points[static_cast<std::size_t>(k)]);
    return HermitianMatrix(std::move(m), 1e-12);
}

PositivityReport positivity_check(const StateFunctional& state, const WeylPolynomial& p) {
    const Complex v = state.eval_poly(weyl_multiply(adjoint(p), p));
    PositivityReport r;
    r.value = v.real();
    r.imag = v.imag();
    r.pass = std::abs(r.imag) <= 1e-10 && r.value >= -1e-10;
    return r;
}

std::size_t SupportPartition::class_of(std::size_t j) const {
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t i : classes[c])
            if (i == j) return c;
    throw UsageError("index " + std::to_string(j) + " not covered by partition");
}

SupportPartition support_relation(std::span<const PhasePoint> points, const StateFunctional& state) {
    const HermitianMatrix m = kernel_matrix(state, points);
    const std::size_t n = points.size();
    auto related = [&](std::size_t j, std::size_t k) {
        return m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) != Complex{};
    };
    for (std::size_t j = 0; j < n; ++j) {
        if (!related(j, j)) throw VerificationError("support relation is not reflexive at " + std::to_string(j));
        for (std::size_t k = 0; k < n; ++k) {
            if (related(j, k) != related(k, j))
                throw VerificationError("support relation is not symmetric");
            if (!related(j, k)) continue;
            for (std::size_t l = 0; l < n; ++l)
                if (related(k, l) && !related(j, l))
                    throw VerificationError("support relation is not transitive at (" + std::to_string(j) + "," +
                                            std::to_string(k) + "," + std::to_string(l) + ")");
        }
    }
    SupportPartition out;
    std::vector<bool> assigned(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (assigned[j]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t k = j; k < n; ++k)
            if (!assigned[k] && related(j, k)) {
                cls.push_back(k);
                assigned[k] = true;
            }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

CheckResult rank_one_class_check(const HermitianMatrix& m, const SupportPartition& partition, double tol) {
    const auto n = static_cast<std::size_t>(m.size());
    std::vector<std::size_t> owner(n, n);
    for (std::size_t c = 0; c < partition.classes.size(); ++c)
        for (std::size_t i : partition.classes[c]) {
            if (i >= n || owner[i] != n) throw UsageError("partition does not match matrix");
            owner[i] = c;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (owner[i] == n) throw UsageError("partition does not cover every index");

    auto at = [&](std::size_t j, std::size_t k) {
        return m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    };
    CheckResult r;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            if (owner[j] != owner[k]) {
                r.absorb(std::abs(at(j, k)), tol);
                continue;
            }
            r.absorb(std::abs(std::abs(at(j, k)) - 1.0), tol);
        }
    for (const auto& cls : partition.classes)
        for (std::size_t j : cls)
            for (std::size_t k : cls)
                for (std::size_t l : cls) r.absorb(std::abs(at(j, k) * at(k, l) - at(j, l)), tol);
    return r;
}

Complex class_phase(const StateFunctional& state, const PhasePoint& x) {
    if (x.dim() != 4) throw UsageError("class_phase requires a 4-point");
    const Rational cross = x[1] * (x[0] + x[2]) - x[0] * (x[1] - x[3]);
    const double phase = x[0].to_double() * state.lambda() + x[1].to_double() * state.mu() + 0.5 * cross.to_double();
    return std::polar(1.0, phase);
}

namespace {

// Ratio r with U X = r X U for monomials U, X, read off from the two products.
Complex commutation_phase(const PhasePoint& u, const PhasePoint& x) {
    const auto ux = weyl_multiply(WeylPolynomial::monomial(u), WeylPolynomial::monomial(x));
    const auto xu = weyl_multiply(WeylPolynomial::monomial(x), WeylPolynomial::monomial(u));
    return ux.coeff(u + x) / xu.coeff(u + x);
}

} // namespace

Complex uniqueness_chain_value(const StateFunctional& state, const PhasePoint& x) {
    if (state.kind() != StateKind::Epr) throw UsageError("uniqueness chain is defined for the EPR state");
    if (x.dim() != 4) throw UsageError("uniqueness chain requires a 4-point");
    const Rational zero(0);
    const Rational b_minus_d = x[1] - x[3];
    const Rational a_plus_c = x[0] + x[2];

    // rho(X) rho(A) = rho(AX) = r rho(XA) = r rho(X) rho(A) with |rho(A)| = 1, so
    // rho(X) = 0 whenever the commutation phase r differs from 1.
    if (!b_minus_d.is_zero()) {
        const Rational s = Rational(1) / b_minus_d;
        const Complex r = commutation_phase(PhasePoint{s, zero, -s, zero}, x);
        if (std::abs(r - 1.0) > 1e-6) return 0.0;
    }
    if (!a_plus_c.is_zero()) {
        const Rational t = Rational(1) / a_plus_c;
        const Complex r = commutation_phase(PhasePoint{zero, t, zero, t}, x);
        if (std::abs(r - 1.0) > 1e-6) return 0.0;
    }
    // On {c=-a, d=b}: W(x) = [W(a,0)xW(-a,0)][W(0,b)xW(0,b)] up to the product phase.
    const auto pos = WeylPolynomial::monomial(PhasePoint{x[0], zero, -x[0], zero});
    const auto mom = WeylPolynomial::monomial(PhasePoint{zero, x[1], zero, x[1]});
    const auto product = weyl_multiply(pos, mom);
    const Complex phase = product.coeff(x);
    const Complex rho_pos = std::polar(1.0, x[0].to_double() * state.lambda());
    const Complex rho_mom = std::polar(1.0, x[1].to_double() * state.mu());
    return rho_pos * rho_mom / phase;
}

CheckResult uniqueness_support_check(const StateFunctional& state, const PhasePoint& x, double tol) {
    if (state.kind() != StateKind::Epr) throw UsageError("uniqueness check is defined for the EPR state");
    const Complex v = state.eval_point(x);
    CheckResult r;
    if (!on_epr_manifold(x)) {
        r.absorb(v == Complex{} ? 0.0 : std::abs(v), 0.0);
    } else {
        const Complex expected = std::polar(1.0, x[0].to_double() * state.lambda() + x[1].to_double() * state.mu());
        r.absorb(std::abs(v - expected), tol);
    }
    r.absorb(std::abs(uniqueness_chain_value(state, x) - v), tol);
    return r;
}

CheckResult multiplicativity_check(const StateFunctional& state, const Rational& s, const Rational& t,
                                   std::span<const WeylPolynomial> probes, double tol) {
    const Rational zero(0);
    const auto a = WeylPolynomial::monomial(PhasePoint{s, zero, -s, zero});
    const auto b = WeylPolynomial::monomial(PhasePoint{zero, t, zero, t});
    const Complex wa = state.eval_poly(a);
    const Complex wb = state.eval_poly(b);
    CheckResult r;
    r.absorb(std::abs(state.eval_poly(weyl_multiply(a, b)) - wa * wb), tol);
    for (const auto& x : probes) {
        const Complex wx = state.eval_poly(x);
        for (const auto* u : {&a, &b}) {
            const Complex wu = u == &a ? wa : wb;
            r.absorb(std::abs(state.eval_poly(weyl_multiply(*u, x)) - wu * wx), tol);
            r.absorb(std::abs(state.eval_poly(weyl_multiply(x, *u)) - wx * wu), tol);
        }
    }
    return r;
}

CheckResult traciality_check(const StateFunctional& state, const PhasePoint& a, const PhasePoint& b, int slot,
                             double tol) {
    const auto wa = WeylPolynomial::monomial(a);
    const auto wb = WeylPolynomial::monomial(b);
    const Complex ab = state.eval_poly(tensor_embed(weyl_multiply(wa, wb), slot));
    const Complex ba = state.eval_poly(tensor_embed(weyl_multiply(wb, wa), slot));
    CheckResult r;
    r.absorb(std::abs(ab - ba), tol);
    if (state.kind() == StateKind::Epr && !(a == -b)) {
        r.absorb(ab == Complex{} ? 0.0 : std::abs(ab), 0.0);
        r.absorb(ba == Complex{} ? 0.0 : std::abs(ba), 0.0);
    }
    return r;
}

} // namespace eprweyl
