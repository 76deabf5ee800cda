#include <doctest.h>

#include <cmath>

#include "eprweyl/errors.hpp"
#include "eprweyl/gns.hpp"
#include "eprweyl/sampling.hpp"

using namespace eprweyl;

namespace {

WeylPolynomial w(const PhasePoint& x, Complex c = 1.0) { return WeylPolynomial::monomial(x, c); }

// Largest Rayleigh quotient |<v, A v>| / <v, G v> over random v, a crude lower
// estimate of the compressed norm for a self-adjoint operator.
double rayleigh_estimate(const ComplexMatrix& a, const ComplexMatrix& g, Sampler& rng, int trials) {
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        ComplexVector v(a.rows());
        for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const double den = (v.adjoint() * g * v)(0, 0).real();
        if (den < 1e-9) continue;
        best = std::max(best, std::abs((v.adjoint() * a * v)(0, 0)) / den);
    }
    return best;
}

} // namespace

TEST_SUITE("gns") {

TEST_CASE("frames with pairwise distinct classes are orthonormal") {
    const auto s = StateFunctional::epr(0.7, 0.2);
    const std::vector<PhasePoint> pts{PhasePoint::zero(4), PhasePoint{1, 0, 0, 0}, PhasePoint{0, 1, 0, 0},
                                      PhasePoint{0, 0, 0, 1}};
    const auto f = build_frame(s, pts);
    CHECK((f.gram().matrix() - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("frame on a single class is rank one") {
    const auto s = StateFunctional::epr();
    const std::vector<PhasePoint> pts{PhasePoint::zero(4), PhasePoint{1, 0, -1, 0}};
    const auto f = build_frame(s, pts);
    ComplexMatrix ones(2, 2);
    ones << 1, 1, 1, 1;
    CHECK((f.gram().matrix() - ones).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(build_frame(s.with_corrupted_kernel(), pts), VerificationError);
    const std::vector<PhasePoint> dup{PhasePoint::zero(4), PhasePoint::zero(4)};
    CHECK_THROWS_AS(build_frame(s, dup), UsageError);
}

TEST_CASE("compression of the identity is the Gram matrix") {
    Sampler rng(2);
    const auto s = StateFunctional::epr(1.1, -0.3);
    const auto f = build_frame(s, rng.clustered_points(8));
    const auto c = compress_operator(s, f, WeylPolynomial::identity(4));
    CHECK((c - f.gram().matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("compressions of self-adjoint elements are Hermitian") {
    Sampler rng(3);
    const auto s = StateFunctional::epr(-0.6, 2.4);
    for (int i = 0; i < 20; ++i) {
        const auto f = build_frame(s, rng.clustered_points(6));
        auto p = rng.polynomial(4, 3);
        p += adjoint(p);
        CHECK(hermitian_defect(compress_operator(s, f, p)) < 1e-12);
    }
}

TEST_CASE("collinearity example") {
    const auto s = StateFunctional::epr();
    const auto r = collinearity_check(1, 1, 1, 1, s);
    CHECK(r.pass);
    CHECK(std::abs(r.modulus - 1.0) < 1e-12);
    CHECK(std::abs(r.inner - std::polar(1.0, 1.0)) < 1e-12);
}

TEST_CASE("property: collinearity with the expected phase") {
    Sampler rng(4);
    for (int i = 0; i < 100; ++i) {
        const double lambda = rng.uniform(-5, 5), mu = rng.uniform(-5, 5);
        const auto s = StateFunctional::epr(lambda, mu);
        const Rational a = rng.rational(), b = rng.rational(), c = rng.rational(), d = rng.rational();
        const auto r = collinearity_check(a, b, c, d, s, 1e-12);
        CHECK(r.pass);
        const double t = ((a * d + b * c) * Rational(1, 2)).to_double();
        const Complex expected = std::polar(1.0, t + c.to_double() * lambda - d.to_double() * mu);
        CHECK(std::abs(r.inner - expected) < 1e-12);
    }
}

TEST_CASE("trace vector examples") {
    const auto s = StateFunctional::epr(0.5, 0.5);
    const auto p = w(PhasePoint{1, 0}), q = w(PhasePoint{0, 1});
    CHECK(trace_vector_check(s, p, q, 1).pass);
    CHECK(trace_vector_check(s, p, q, 2).pass);
    CHECK(trace_vector_check(s, p, adjoint(p), 1).pass);
    CHECK_FALSE(trace_vector_check(StateFunctional::reference_regular(), p, q, 1).pass);
    Sampler rng(5);
    for (int i = 0; i < 50; ++i)
        CHECK(trace_vector_check(s, rng.polynomial(2, 3), rng.polynomial(2, 3), 1 + i % 2).pass);
}

TEST_CASE("norm lower bound examples") {
    const auto s = StateFunctional::epr(0.3, 0.1);
    Sampler rng(6);
    const auto f = build_frame(s, rng.clustered_points(8));
    const auto x = rng.point(4);
    const auto nb = norm_lower_bound(s, f, w(x));
    CHECK(nb.value <= 1.0 + 1e-9);
    CHECK(nb.rank >= 1);
    const auto two = norm_lower_bound(s, f, WeylPolynomial::identity(4, 2.0));
    CHECK(std::abs(two.value - 2.0) < 1e-9);
}

TEST_CASE("norm lower bound against Rayleigh quotients and the one-norm") {
    const auto s = StateFunctional::reference_regular();
    const PhasePoint x{1, 0, 0, 0};
    const std::vector<PhasePoint> pts{PhasePoint::zero(4), x, -x, x + x};
    const auto f = build_frame(s, pts);
    const auto p = w(x) + w(-x);
    const auto nb = norm_lower_bound(s, f, p);
    Sampler rng(7);
    const double rq = rayleigh_estimate(compress_operator(s, f, p), f.gram().matrix(), rng, 4000);
    CHECK(nb.value >= rq - 1e-9);
    CHECK(nb.value <= one_norm(p) + 1e-9);
    CHECK(nb.value > 1.0);
}

TEST_CASE("property: norm sandwich") {
    Sampler rng(8);
    const StateFunctional states[] = {StateFunctional::epr(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                                      StateFunctional::reference_regular()};
    for (const auto& s : states)
        for (int i = 0; i < 30; ++i) {
            const auto f = build_frame(s, rng.clustered_points(7));
            const auto p = rng.polynomial(4, 4);
            const auto nb = norm_lower_bound(s, f, p);
            CHECK(nb.value >= -1e-12);
            CHECK(nb.value <= one_norm(p) + 1e-9);
        }
}

} // TEST_SUITE
