#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "eprweyl/check.hpp"
#include "eprweyl/hermitian.hpp"
#include "eprweyl/phase_point.hpp"
#include "eprweyl/weyl_polynomial.hpp"

namespace eprweyl {

enum class StateKind { Epr, ReferenceRegular };

/// A state on A[R^4] given by its values G(x) = omega(W(x)) on Weyl generators.
///
/// EPR: G(a,b,c,d) = delta(a+c) delta(b-d) exp(i(a lambda + b mu)), where
/// delta is the indicator of {0}; decided by exact rational equality.
/// ReferenceRegular: G(x) = exp(-|x|^2 / 4), the Fock vacuum, used as a
/// contrast case for the kernel machinery.
class StateFunctional {
public:
    static StateFunctional epr(double lambda = 0.0, double mu = 0.0);
    static StateFunctional reference_regular();

    /// Test-only negative control: G(x) is doubled off the origin, which
    /// destroys positive definiteness of the kernel.
    [[nodiscard]] StateFunctional with_corrupted_kernel() const;

    [[nodiscard]] StateKind kind() const { return kind_; }
    [[nodiscard]] double lambda() const { return lambda_; }
    [[nodiscard]] double mu() const { return mu_; }
    [[nodiscard]] bool corrupted() const { return corrupted_; }

    /// G(x) = omega(W(x)) for a 4-point x.
    [[nodiscard]] Complex eval_point(const PhasePoint& x) const;
    /// Linear extension: sum c_k G(x_k).
    [[nodiscard]] Complex eval_poly(const WeylPolynomial& p) const;

    /// {kind: "epr"|"regular", lambda, mu}, plus "corrupt_kernel": true when set.
    [[nodiscard]] nlohmann::json to_json() const;
    static StateFunctional from_json(const nlohmann::json& j);

private:
    StateFunctional(StateKind kind, double lambda, double mu) : kind_(kind), lambda_(lambda), mu_(mu) {}

    StateKind kind_;
    double lambda_;
    double mu_;
    bool corrupted_ = false;
};

/// The point lies on {c = -a, d = b}, the support of the EPR generator values.
bool on_epr_manifold(const PhasePoint& x);

/// F(x, y) = G(x - y) exp(-i (sigma+sigma)(x, y)).
Complex kernel_value(const StateFunctional& state, const PhasePoint& x, const PhasePoint& y);

/// M[j][k] = F(x_j, x_k). Throws UsageError on duplicate points or wrong dimension.
HermitianMatrix kernel_matrix(const StateFunctional& state, std::span<const PhasePoint> points);

struct PositivityReport {
    double value = 0.0; // Re omega(P* P)
    double imag = 0.0;  // Im omega(P* P)
    bool pass = false;  // |imag| <= 1e-10 and value >= -1e-10
};

/// omega(P* P) evaluated through the Weyl product.
PositivityReport positivity_check(const StateFunctional& state, const WeylPolynomial& p);

/// Disjoint classes of point indices covering 0..n-1.
struct SupportPartition {
    std::vector<std::vector<std::size_t>> classes;

    /// Index of the class containing point j.
    [[nodiscard]] std::size_t class_of(std::size_t j) const;
};

/// Relation (j,k) in R iff F(x_j, x_k) != 0. Verifies it is an equivalence
/// relation (VerificationError otherwise) and returns its classes, ordered
/// by smallest member.
SupportPartition support_relation(std::span<const PhasePoint> points, const StateFunctional& state);

/// Within each class |M_jk| = 1 and M_jk M_kl = M_jl (rank-one factorization
/// alpha_j conj(alpha_k)); across classes M_jk = 0.
CheckResult rank_one_class_check(const HermitianMatrix& m, const SupportPartition& partition, double tol);

/// Class phase alpha_j with exp(i(a lambda + b mu)) times
/// exp(i/2 [b (a + c) - a (b - d)]), so that F(x_j, x_k) = alpha_j conj(alpha_k)
/// on each support class.
Complex class_phase(const StateFunctional& state, const PhasePoint& x);

/// Value of rho(W(x)) forced by the defining values on W(a,0)xW(-a,0) and
/// W(0,b)xW(0,b), multiplicativity on those unitaries, and their commutation
/// phases with W(x). Computed with Weyl products only, never with eval_point.
Complex uniqueness_chain_value(const StateFunctional& state, const PhasePoint& x);

/// Exact zero off {c=-a, d=b}; exp(i(a lambda + b mu)) within tol on it; and
/// agreement with uniqueness_chain_value.
CheckResult uniqueness_support_check(const StateFunctional& state, const PhasePoint& x, double tol = 1e-12);

/// With A = W(s,0)xW(-s,0), B = W(0,t)xW(0,t): omega(AB) = omega(A)omega(B) and,
/// for each probe X, omega(AX) = omega(XA) = omega(X)omega(A) (same for B).
CheckResult multiplicativity_check(const StateFunctional& state, const Rational& s, const Rational& t,
                                   std::span<const WeylPolynomial> probes = {}, double tol = 1e-12);

/// omega(W(a)W(b) x I) = omega(W(b)W(a) x I) (slot 1; slot 2 embeds the other
/// factor). For the EPR state both sides are exactly 0 when a != -b.
CheckResult traciality_check(const StateFunctional& state, const PhasePoint& a, const PhasePoint& b,
                             int slot = 1, double tol = 1e-12);

} // namespace eprweyl
