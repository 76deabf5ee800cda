#pragma once

#include <span>
#include <vector>

#include "eprweyl/check.hpp"
#include "eprweyl/hermitian.hpp"
#include "eprweyl/states.hpp"
#include "eprweyl/weyl_polynomial.hpp"

namespace eprweyl {

/// Finite family of GNS vectors W(x_j) Omega and their Gram matrix
/// gram[j][k] = <W(x_j) Omega, W(x_k) Omega> = omega(W(x_j)* W(x_k)).
class GnsFrame {
public:
    [[nodiscard]] const std::vector<PhasePoint>& points() const { return points_; }
    [[nodiscard]] const HermitianMatrix& gram() const { return gram_; }
    [[nodiscard]] std::size_t size() const { return points_.size(); }

private:
    friend GnsFrame build_frame(const StateFunctional& state, std::span<const PhasePoint> points);
    GnsFrame(std::vector<PhasePoint> points, HermitianMatrix gram)
        : points_(std::move(points)), gram_(std::move(gram)) {}

    std::vector<PhasePoint> points_;
    HermitianMatrix gram_;
};

/// Throws UsageError on duplicate points and VerificationError if the Gram
/// matrix is not PSD within 1e-10.
GnsFrame build_frame(const StateFunctional& state, std::span<const PhasePoint> points);

/// M[j][k] = omega(W(x_j)* P W(x_k)), the matrix of pi(P) in the frame.
ComplexMatrix compress_operator(const StateFunctional& state, const GnsFrame& frame, const WeylPolynomial& p);

struct CollinearityReport {
    Complex inner;       // <psi, phi>
    Complex expected;    // exp(it) exp(i c lambda) exp(-i d mu), t = (ad + bc)/2
    double modulus = 0;  // |<psi, phi>|
    double phase_error = 0;
    bool pass = false;
};

/// psi = W(a,b)xW(c,d) Omega, phi = W(a+c, b-d)xI Omega.
CollinearityReport collinearity_check(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                      const StateFunctional& state, double tol = 1e-12);

/// omega(embed(PQ)) = omega(embed(QP)) for P, Q over R^2 embedded in the given slot.
CheckResult trace_vector_check(const StateFunctional& state, const WeylPolynomial& p, const WeylPolynomial& q,
                               int slot, double tol = 1e-10);

struct NormBound {
    double value = 0.0;          // largest singular value of the whitened compression
    double min_gram_eigenvalue = 0.0;
    Eigen::Index rank = 0;       // eigenvalues of the Gram above the floor
    bool ill_conditioned = false; // min Gram eigenvalue below 1e-8
};

/// Gram eigenvalues at or below this floor are discarded when whitening.
inline constexpr double kGramEigenFloor = 1e-12;

/// Lower bound on the C*-norm of P from its compression to span{W(x_j) Omega}.
NormBound norm_lower_bound(const StateFunctional& state, const GnsFrame& frame, const WeylPolynomial& p);

} // namespace eprweyl
