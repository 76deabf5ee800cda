#pragma once

#include <cstdint>

#include "eprweyl/report.hpp"
#include "eprweyl/states.hpp"

namespace eprweyl {

/// Battery sizes for the full verification suite. Defaults run in well under a minute.
struct SuiteOptions {
    std::uint64_t seed = 1;
    int kernel_batteries = 10;
    int kernel_points = 64;
    int uniqueness_monomials = 200;
    int multiplicativity_pairs = 100;
    int traciality_pairs = 100;
    int collinearity_quadruples = 100;
    int gram_form_polynomials = 100;
    int engine_samples = 50;
    int bell_random_candidates = 200;
    int doubles = 100;
};

/// Runs every check that applies to the state. EPR-specific structure
/// (support classes, uniqueness, traciality, collinearity, doubles, the
/// monomial Bell family) is skipped for the reference regular state.
VerificationReport run_verify_all(const StateFunctional& state, const SuiteOptions& options = {});

} // namespace eprweyl
