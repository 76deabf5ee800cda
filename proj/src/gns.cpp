#include "eprweyl/gns.hpp"

#include <cmath>
#include <set>

#include "eprweyl/errors.hpp"

namespace eprweyl {

GnsFrame build_frame(const StateFunctional& state, std::span<const PhasePoint> points) {
    std::set<PhasePoint> seen;
    for (const auto& x : points) {
        if (x.dim() != 4) throw UsageError("frame points must lie in R^4");
        if (!seen.insert(x).second) throw UsageError("duplicate frame point " + x.to_string());
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto left = adjoint(WeylPolynomial::monomial(points[static_cast<std::size_t>(j)]));
        for (Eigen::Index k = 0; k < n; ++k)
            g(j, k) = state.eval_poly(weyl_multiply(left, WeylPolynomial::monomial(points[static_cast<std::size_t>(k)])));
    }
    HermitianMatrix gram(std::move(g), 1e-10);
    const PsdReport psd = psd_check(gram, 1e-10);
    if (!psd.pass)
        throw VerificationError("frame Gram matrix is not PSD (min eigenvalue " + std::to_string(psd.min_eigenvalue) +
                                ")");
    return GnsFrame(std::vector<PhasePoint>(points.begin(), points.end()), std::move(gram));
}

ComplexMatrix compress_operator(const StateFunctional& state, const GnsFrame& frame, const WeylPolynomial& p) {
    const auto& pts = frame.points();
    const auto n = static_cast<Eigen::Index>(pts.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto left = weyl_multiply(adjoint(WeylPolynomial::monomial(pts[static_cast<std::size_t>(j)])), p);
        for (Eigen::Index k = 0; k < n; ++k)
            m(j, k) = state.eval_poly(weyl_multiply(left, WeylPolynomial::monomial(pts[static_cast<std::size_t>(k)])));
    }
    return m;
}

CollinearityReport collinearity_check(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                      const StateFunctional& state, double tol) {
    const Rational zero(0);
    const auto psi = WeylPolynomial::monomial(PhasePoint{a, b, c, d});
    const auto phi = WeylPolynomial::monomial(PhasePoint{a + c, b - d, zero, zero});
    CollinearityReport r;
    r.inner = state.eval_poly(weyl_multiply(adjoint(psi), phi));
    r.modulus = std::abs(r.inner);
    const double t = ((a * d + b * c) * Rational(1, 2)).to_double();
    r.expected = std::polar(1.0, t + c.to_double() * state.lambda() - d.to_double() * state.mu());
    r.phase_error = std::abs(r.inner - r.expected);
    r.pass = std::abs(r.modulus - 1.0) <= tol && r.phase_error <= tol;
    return r;
}

CheckResult trace_vector_check(const StateFunctional& state, const WeylPolynomial& p, const WeylPolynomial& q,
                               int slot, double tol) {
    const Complex pq = state.eval_poly(tensor_embed(weyl_multiply(p, q), slot));
    const Complex qp = state.eval_poly(tensor_embed(weyl_multiply(q, p), slot));
    CheckResult r;
    r.absorb(std::abs(pq - qp), tol);
    return r;
}

NormBound norm_lower_bound(const StateFunctional& state, const GnsFrame& frame, const WeylPolynomial& p) {
    NormBound out;
    if (frame.size() == 0) return out;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(frame.gram().matrix());
    const Eigen::VectorXd& evals = eig.eigenvalues();
    out.min_gram_eigenvalue = evals(0);
    out.ill_conditioned = evals(0) < 1e-8;

    // Columns U_i / sqrt(d_i) for d_i above the floor form an orthonormal basis
    // of the frame span in the GNS inner product.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < evals.size(); ++i)
        if (evals(i) > kGramEigenFloor) keep.push_back(i);
    out.rank = static_cast<Eigen::Index>(keep.size());
    if (keep.empty()) return out;
    ComplexMatrix whitening(evals.size(), out.rank);
    for (Eigen::Index c = 0; c < out.rank; ++c) {
        const Eigen::Index i = keep[static_cast<std::size_t>(c)];
        whitening.col(c) = eig.eigenvectors().col(i) / std::sqrt(evals(i));
    }
    const ComplexMatrix compressed = whitening.adjoint() * compress_operator(state, frame, p) * whitening;
    Eigen::JacobiSVD<ComplexMatrix> svd(compressed);
    out.value = svd.singularValues()(0);
    return out;
}

} // namespace eprweyl
