#include "eprweyl/sampling.hpp"

#include <set>

namespace eprweyl {

double Sampler::uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::int64_t Sampler::integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
}

Rational Sampler::rational(std::int64_t max_num, std::int64_t max_den) {
    return Rational(integer(-max_num, max_num), integer(1, max_den));
}

PhasePoint Sampler::point(int dim, std::int64_t max_num, std::int64_t max_den) {
    if (dim == 2) return PhasePoint{rational(max_num, max_den), rational(max_num, max_den)};
    return PhasePoint{rational(max_num, max_den), rational(max_num, max_den), rational(max_num, max_den),
                      rational(max_num, max_den)};
}

PhasePoint Sampler::epr_manifold_point() {
    const Rational a = rational(), b = rational();
    return PhasePoint{a, b, -a, b};
}

std::vector<PhasePoint> Sampler::clustered_points(std::size_t n) {
    const std::size_t n_cosets = 1 + static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n / 8 + 2)));
    std::vector<std::pair<Rational, Rational>> cosets;
    for (std::size_t i = 0; i < n_cosets; ++i) cosets.emplace_back(rational(3, 2), rational(3, 2));
    std::set<PhasePoint> seen;
    std::vector<PhasePoint> out;
    while (out.size() < n) {
        PhasePoint x;
        if (coin(0.85)) {
            // a + c = u, b - d = v on a shared coset (u, v)
            const auto& [u, v] = cosets[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n_cosets) - 1))];
            const Rational a = rational(), b = rational();
            x = PhasePoint{a, b, u - a, b - v};
        } else {
            x = point(4);
        }
        if (seen.insert(x).second) out.push_back(x);
    }
    return out;
}

WeylPolynomial Sampler::polynomial(int dim, std::size_t terms) {
    WeylPolynomial p(dim);
    while (p.size() < terms) p.add_term(point(dim, 3, 2), Complex(uniform(-1, 1), uniform(-1, 1)));
    return p;
}

WeylPolynomial Sampler::contraction(std::size_t orbits) {
    WeylPolynomial p(2);
    p.add_term(PhasePoint::zero(2), uniform(-1, 1));
    for (std::size_t i = 0; i < orbits; ++i) {
        const PhasePoint x = point(2, 3, 2);
        if (x.is_zero() || p.coeff(x) != Complex{}) continue;
        const Complex c(uniform(-1, 1), uniform(-1, 1));
        p.add_term(x, c);
        p.add_term(-x, std::conj(c));
    }
    const double n = one_norm(p);
    if (n > 1.0) p *= 1.0 / n;
    return p;
}

ComplexMatrix Sampler::matrix(int m) {
    ComplexMatrix a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = Complex(uniform(-1, 1), uniform(-1, 1));
    return a;
}

ComplexMatrix Sampler::self_adjoint_matrix(int m) {
    const ComplexMatrix a = matrix(m);
    return 0.5 * (a + a.adjoint());
}

} // namespace eprweyl
