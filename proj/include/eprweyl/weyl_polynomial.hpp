#pragma once

#include <complex>
#include <cstddef>
#include <map>

#include "eprweyl/phase_point.hpp"
#include "eprweyl/rational.hpp"

namespace eprweyl {

using Complex = std::complex<double>;

/// Coefficients with modulus below this are dropped during canonicalization.
inline constexpr double kZeroThreshold = 1e-15;
/// Default cap on the number of terms an operation may consume or produce.
inline constexpr std::size_t kDefaultTermCap = 4096;

/// Finite formal combination sum_k c_k W(x_k) in the Weyl algebra over R^2 or R^4.
///
/// Canonical form: at most one term per point, no coefficient with modulus
/// below kZeroThreshold. Terms are ordered by point, so iteration order and
/// serialization are deterministic.
class WeylPolynomial {
public:
    using TermMap = std::map<PhasePoint, Complex>;

    explicit WeylPolynomial(int dim);

    static WeylPolynomial monomial(const PhasePoint& x, Complex coeff = 1.0);
    static WeylPolynomial identity(int dim, Complex coeff = 1.0);

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    /// Coefficient of W(x); zero when absent.
    [[nodiscard]] Complex coeff(const PhasePoint& x) const;

    /// Adds c W(x), merging with an existing term and dropping a vanishing result.
    void add_term(const PhasePoint& x, Complex c);

    WeylPolynomial& operator+=(const WeylPolynomial& o);
    WeylPolynomial& operator-=(const WeylPolynomial& o);
    WeylPolynomial& operator*=(Complex s);

    friend WeylPolynomial operator+(WeylPolynomial a, const WeylPolynomial& b) { return a += b; }
    friend WeylPolynomial operator-(WeylPolynomial a, const WeylPolynomial& b) { return a -= b; }
    friend WeylPolynomial operator*(WeylPolynomial a, Complex s) { return a *= s; }
    friend WeylPolynomial operator*(Complex s, WeylPolynomial a) { return a *= s; }
    friend WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b);

    friend bool operator==(const WeylPolynomial&, const WeylPolynomial&) = default;

private:
    void require_dim(const PhasePoint& x) const;

    int dim_;
    TermMap terms_;
};

/// sigma((a,b),(a',b')) = (ab' - ba') / 2.
Rational symplectic_form(const PhasePoint& x, const PhasePoint& y);
/// (sigma + sigma)(x, y) on R^4: the form applied to each coordinate pair and summed.
Rational direct_sum_form(const PhasePoint& x, const PhasePoint& y);
/// Dispatches to symplectic_form or direct_sum_form on the common dimension.
Rational weyl_form(const PhasePoint& x, const PhasePoint& y);
/// exp(i sigma(x, y)), the Weyl relation phase.
Complex weyl_phase(const PhasePoint& x, const PhasePoint& y);

/// Bilinear extension of W(x) W(y) = exp(i sigma(x,y)) W(x + y).
/// Throws ResourceError when either operand or the product exceeds term_cap terms.
WeylPolynomial weyl_multiply(const WeylPolynomial& p, const WeylPolynomial& q,
                             std::size_t term_cap = kDefaultTermCap);

/// sum c_k W(x_k)  ->  sum conj(c_k) W(-x_k).
WeylPolynomial adjoint(const WeylPolynomial& p);

/// A[R^2] -> A[R^4]: slot 1 maps (a,b) to (a,b,0,0), slot 2 maps (c,d) to (0,0,c,d).
WeylPolynomial tensor_embed(const WeylPolynomial& p, int slot);

/// sum |c_k|. Upper bound on the C*-norm since every W(x) is unitary.
double one_norm(const WeylPolynomial& p);

bool is_self_adjoint(const WeylPolynomial& p, double tol);

} // namespace eprweyl
