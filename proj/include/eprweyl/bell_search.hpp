#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eprweyl/states.hpp"
#include "eprweyl/weyl_polynomial.hpp"

namespace eprweyl {

inline constexpr double kTsirelsonBound = 1.4142135623730950488; // sqrt(2)

/// Observables A1, A2 of the first factor and B1, B2 of the second, each a
/// polynomial over R^2. Full candidates are self-adjoint with one_norm <= 1.
struct BellCandidate {
    WeylPolynomial a1{2}, a2{2}, b1{2}, b2{2};

    static BellCandidate identity();
    [[nodiscard]] std::size_t term_count() const { return a1.size() + a2.size() + b1.size() + b2.size(); }
    [[nodiscard]] const WeylPolynomial& slot(int i) const;

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Throws UsageError unless every component is over R^2, self-adjoint within
/// sa_tol and has one_norm <= 1 + norm_tol.
void validate_candidate(const BellCandidate& c, double sa_tol = 1e-10, double norm_tol = 1e-12);

/// R = 1/2 [A1 (B1 + B2) + A2 (B1 - B2)] with A_i in slot 1 and B_j in slot 2.
WeylPolynomial bell_operator(const BellCandidate& c);

/// omega(R).
Complex bell_expectation(const StateFunctional& state, const BellCandidate& c);
/// Re omega(R); throws VerificationError if |Im omega(R)| > 1e-10.
double bell_value(const StateFunctional& state, const BellCandidate& c);

struct FamilyAngles {
    double alpha1 = 0, alpha2 = 0, beta1 = 0, beta2 = 0;
};

/// Angles at which the monomial family attains its maximum for shift kappa = a lambda + b mu.
FamilyAngles optimal_family_angles(double kappa = 0.0);

/// A_i = (e^{i alpha_i} W(a,b) + e^{-i alpha_i} W(-a,-b)) / 2,
/// B_j = (e^{i beta_j} W(-a,b) + e^{-i beta_j} W(a,-b)) / 2.
BellCandidate monomial_family_candidate(const Rational& a, const Rational& b, const FamilyAngles& angles);

/// Closed form of the EPR Bell value on the monomial family:
/// 1/4 [cos p11 + cos p12 + cos p21 - cos p22], p_ij = alpha_i + beta_j + a lambda + b mu.
double monomial_family_value(const Rational& a, const Rational& b, const FamilyAngles& angles,
                             const StateFunctional& state);

struct SearchConfig {
    /// Supports of A1, A2, B1, B2; each a list of 2-points closed under negation.
    std::array<std::vector<PhasePoint>, 4> supports;
    int restarts = 8;
    int max_iters = 2000;
    std::uint64_t seed = 1;
    double initial_step = 0.5;
    double step_decay = 0.5;
    double step_floor = 1e-7;
    std::size_t term_cap = kDefaultTermCap;

    /// Throws UsageError on malformed supports or parameters, ResourceError if
    /// the Bell operator would exceed term_cap terms.
    void validate() const;

    /// Supports {+-(a,b)} for A_i and {+-(-a,b)} for B_j.
    static SearchConfig monomial_family(const Rational& a, const Rational& b);

    /// {supports, restarts, max_iters, seed}; "supports" may hold 1 list (all
    /// slots), 2 lists (A slots, B slots) or 4 lists.
    [[nodiscard]] nlohmann::json to_json() const;
    static SearchConfig from_json(const nlohmann::json& j);
};

struct SearchResult {
    BellCandidate best;
    double value = 0.0;
    int best_restart = 0;
    /// (iteration, best value so far) for the winning restart.
    std::vector<std::pair<int, double>> trace;
    /// Largest Bell value of any candidate evaluated in any restart.
    double max_evaluated = 0.0;
    std::size_t evaluations = 0;
};

/// Derivative-free coordinate search with seeded random restarts. Every
/// candidate is normalized to one_norm <= 1, so the returned value is a
/// certified lower bound on the maximal Bell correlation.
SearchResult optimize_bell(const StateFunctional& state, const SearchConfig& cfg);

struct DoubleReport {
    PhasePoint partner;            // U' = phase * I x W(partner)
    Complex phase;
    double deviation = 0.0;        // rho((U - U')*(U - U'))
    double closed_form = 0.0;      // 2 - 2 Re rho(U* U')
    double self_adjoint_deviation = 0.0; // rho((A - A')^2), A = U + U*, A' = U' + U'*
};

/// Perfect-correlation partner of U = W(a,b) x I in the second factor.
DoubleReport weyl_double(const Rational& a, const Rational& b, const StateFunctional& state);

/// Same deviations for an arbitrary proposed partner I x phase W(partner).
DoubleReport double_deviation(const Rational& a, const Rational& b, const PhasePoint& partner, Complex phase,
                              const StateFunctional& state);

} // namespace eprweyl
