#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eprweyl/hermitian.hpp"
#include "eprweyl/phase_point.hpp"
#include "eprweyl/weyl_polynomial.hpp"

namespace eprweyl {

/// Seeded generator of random test inputs. Draws come straight from the
/// engine bits, so a seed reproduces the same inputs on every platform.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi);
    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi);
    bool coin(double p_true = 0.5) { return uniform(0.0, 1.0) < p_true; }

    /// p/q with |p| <= max_num and 1 <= q <= max_den.
    Rational rational(std::int64_t max_num = 6, std::int64_t max_den = 4);
    PhasePoint point(int dim, std::int64_t max_num = 6, std::int64_t max_den = 4);
    /// Random point on {c = -a, d = b}.
    PhasePoint epr_manifold_point();

    /// n distinct 4-points grouped into a few cosets of {c = -a, d = b}, so the
    /// EPR kernel has nontrivial support classes.
    std::vector<PhasePoint> clustered_points(std::size_t n);

    WeylPolynomial polynomial(int dim, std::size_t terms);
    /// Self-adjoint polynomial over R^2 with one_norm exactly <= 1.
    WeylPolynomial contraction(std::size_t orbits);

    ComplexMatrix self_adjoint_matrix(int m);
    ComplexMatrix matrix(int m);

private:
    std::mt19937_64 rng_;
};

} // namespace eprweyl
