#pragma once

#include <vector>

#include "eprweyl/hermitian.hpp"

namespace eprweyl {

/// Finite factor M_m(C) x M_m(C) carrying the structure used for maximal Bell
/// correlation: the maximally entangled vector Omega (a cyclic, separating
/// trace vector for the first factor), a projection P with trace 1/2 and a
/// partial isometry V with V V* = P, V* V = I - P.
///
/// Vectors of C^m x C^m are stored as m x m matrices Psi, so that
/// (A x B) Psi = A Psi B^T and Omega = I / sqrt(m).
class MatrixModel {
public:
    [[nodiscard]] int dim() const { return m_; }
    [[nodiscard]] const ComplexMatrix& omega() const { return omega_; }
    [[nodiscard]] const ComplexMatrix& projection() const { return p_; }
    [[nodiscard]] const ComplexMatrix& partial_isometry() const { return v_; }

private:
    friend MatrixModel build_model(int m);
    MatrixModel() = default;

    int m_ = 0;
    ComplexMatrix omega_, p_, v_;
};

inline constexpr int kMaxModelDim = 64;

/// m even, 2 <= m <= 64 (UsageError otherwise). P = diag(1 on the first m/2),
/// V e_{i+m/2} = e_i. Invariants are verified to 1e-13 (VerificationError).
MatrixModel build_model(int m);

/// (A x I) Psi and (I x B) Psi for a bipartite vector Psi.
ComplexMatrix apply_first(const ComplexMatrix& a, const ComplexMatrix& psi);
ComplexMatrix apply_second(const ComplexMatrix& b, const ComplexMatrix& psi);
/// <Phi, Psi>, antilinear in the first argument.
Complex inner(const ComplexMatrix& phi, const ComplexMatrix& psi);

/// <Omega, (A x I) Omega>.
Complex expectation_first(const MatrixModel& model, const ComplexMatrix& a);
/// <Omega, (A x B) Omega>, A on the first factor, B on the second.
Complex expectation(const MatrixModel& model, const ComplexMatrix& a, const ComplexMatrix& b);

/// A(theta) = e^{i theta} V + e^{-i theta} V*, a self-adjoint unitary.
ComplexMatrix a_theta(const MatrixModel& model, double theta);

/// The anti-isomorphism onto the commutant: the transpose in the matched
/// basis, acting on the second factor. Satisfies (I x gamma(A)) Omega = (A x I) Omega.
ComplexMatrix gamma(const MatrixModel& model, const ComplexMatrix& a);

/// <Omega, (A(theta1) A(theta2) x I) Omega> = cos(theta1 - theta2).
double correlation(const MatrixModel& model, double theta1, double theta2);

struct ChshAngles {
    double a1, a2, b1, b2;
};

/// Angles 0, pi/2, pi/4, -pi/4 at which the value is sqrt(2).
ChshAngles optimal_chsh_angles();

/// 1/2 <Omega, (A1(B1+B2) + A2(B1-B2)) Omega> with A_i = A(a_i) on the first
/// factor and B_j = gamma(A(b_j)) on the second.
double chsh_value(const MatrixModel& model, const ChshAngles& angles);
double chsh_value(const MatrixModel& model);

struct MatrixDouble {
    ComplexMatrix double_op; // acts on the second factor
    double deviation = 0.0;  // <Omega, ((A x I) - (I x A'))^2 Omega>
};

/// Deviation for an arbitrary proposed second-factor partner.
double double_deviation(const MatrixModel& model, const ComplexMatrix& a, const ComplexMatrix& partner);

/// A' = gamma(A) for self-adjoint A (UsageError if |A - A*| > 1e-12).
MatrixDouble double_of(const MatrixModel& model, const ComplexMatrix& a);

/// Rank of {(E_ij x I) Omega} over the matrix units of the first factor.
Eigen::Index cyclic_rank(const MatrixModel& model);

} // namespace eprweyl

namespace eprweyl {

/// Grid with spacing `step` over [-pi, pi].
std::vector<double> angle_grid(double step);

/// max over grid pairs of |<Omega, A(t1)A(t2) Omega> - cos(t1 - t2)|, computed
/// from the vectors A(t) Omega (A(t) is self-adjoint).
double correlation_grid_error(const MatrixModel& model, double step);

/// Largest CHSH value over the angle grid with the first angle held at 0.
double chsh_grid_max(const MatrixModel& model, double step);

} // namespace eprweyl
