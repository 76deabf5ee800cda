#include "eprweyl/weyl_polynomial.hpp"

#include <cmath>
#include <string>

#include "eprweyl/errors.hpp"

namespace eprweyl {

WeylPolynomial::WeylPolynomial(int dim) : dim_(dim) {
    if (dim != 2 && dim != 4) throw UsageError("Weyl polynomial dimension must be 2 or 4");
}

WeylPolynomial WeylPolynomial::monomial(const PhasePoint& x, Complex coeff) {
    WeylPolynomial p(x.dim());
    p.add_term(x, coeff);
    return p;
}

WeylPolynomial WeylPolynomial::identity(int dim, Complex coeff) {
    return monomial(PhasePoint::zero(dim), coeff);
}

Complex WeylPolynomial::coeff(const PhasePoint& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Complex{} : it->second;
}

void WeylPolynomial::require_dim(const PhasePoint& x) const {
    if (x.dim() != dim_)
        throw UsageError("point " + x.to_string() + " does not match polynomial dimension " +
                         std::to_string(dim_));
}

void WeylPolynomial::add_term(const PhasePoint& x, Complex c) {
    require_dim(x);
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kZeroThreshold) terms_.erase(it);
}

WeylPolynomial& WeylPolynomial::operator+=(const WeylPolynomial& o) {
    if (o.dim_ != dim_) throw UsageError("Weyl polynomial dimension mismatch");
    for (const auto& [x, c] : o.terms_) add_term(x, c);
    return *this;
}

WeylPolynomial& WeylPolynomial::operator-=(const WeylPolynomial& o) {
    if (o.dim_ != dim_) throw UsageError("Weyl polynomial dimension mismatch");
    for (const auto& [x, c] : o.terms_) add_term(x, -c);
    return *this;
}

WeylPolynomial& WeylPolynomial::operator*=(Complex s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        if (std::abs(it->second) < kZeroThreshold)
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b) { return weyl_multiply(a, b); }

Rational symplectic_form(const PhasePoint& x, const PhasePoint& y) {
    if (x.dim() != 2 || y.dim() != 2) throw UsageError("symplectic_form requires two 2-points");
    return (x[0] * y[1] - x[1] * y[0]) * Rational(1, 2);
}

Rational direct_sum_form(const PhasePoint& x, const PhasePoint& y) {
    if (x.dim() != 4 || y.dim() != 4) throw UsageError("direct_sum_form requires two 4-points");
    return symplectic_form(x.pair(1), y.pair(1)) + symplectic_form(x.pair(2), y.pair(2));
}

Rational weyl_form(const PhasePoint& x, const PhasePoint& y) {
    if (x.dim() != y.dim()) throw UsageError("phase point dimension mismatch");
    return x.dim() == 2 ? symplectic_form(x, y) : direct_sum_form(x, y);
}

Complex weyl_phase(const PhasePoint& x, const PhasePoint& y) {
    const Rational s = weyl_form(x, y);
    if (s.is_zero()) return 1.0;
    return std::polar(1.0, s.to_double());
}

WeylPolynomial weyl_multiply(const WeylPolynomial& p, const WeylPolynomial& q, std::size_t term_cap) {
    if (p.dim() != q.dim()) throw UsageError("weyl_multiply: dimension mismatch");
    if (p.size() > term_cap || q.size() > term_cap)
        throw ResourceError("weyl_multiply: operand exceeds term cap " + std::to_string(term_cap));
    WeylPolynomial out(p.dim());
    for (const auto& [x, cx] : p.terms())
        for (const auto& [y, cy] : q.terms()) {
            out.add_term(x + y, cx * cy * weyl_phase(x, y));
            if (out.size() > term_cap)
                throw ResourceError("weyl_multiply: product exceeds term cap " + std::to_string(term_cap));
        }
    return out;
}

WeylPolynomial adjoint(const WeylPolynomial& p) {
    WeylPolynomial out(p.dim());
    for (const auto& [x, c] : p.terms()) out.add_term(-x, std::conj(c));
    return out;
}

WeylPolynomial tensor_embed(const WeylPolynomial& p, int slot) {
    if (p.dim() != 2) throw UsageError("tensor_embed requires a polynomial over R^2");
    if (slot != 1 && slot != 2) throw UsageError("tensor slot must be 1 or 2");
    WeylPolynomial out(4);
    const Rational zero(0);
    for (const auto& [x, c] : p.terms()) {
        if (slot == 1)
            out.add_term(PhasePoint{x[0], x[1], zero, zero}, c);
        else
            out.add_term(PhasePoint{zero, zero, x[0], x[1]}, c);
    }
    return out;
}

double one_norm(const WeylPolynomial& p) {
    double s = 0.0;
    for (const auto& [x, c] : p.terms()) s += std::abs(c);
    return s;
}

bool is_self_adjoint(const WeylPolynomial& p, double tol) { return one_norm(p - adjoint(p)) <= tol; }

} // namespace eprweyl
