#include "eprweyl/bell_search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "eprweyl/errors.hpp"
#include "eprweyl/hermitian.hpp"
#include "eprweyl/serialization.hpp"

namespace eprweyl {

BellCandidate BellCandidate::identity() {
    BellCandidate c;
    c.a1 = c.a2 = c.b1 = c.b2 = WeylPolynomial::identity(2);
    return c;
}

const WeylPolynomial& BellCandidate::slot(int i) const {
    switch (i) {
    case 0: return a1;
    case 1: return a2;
    case 2: return b1;
    case 3: return b2;
    default: throw UsageError("Bell candidate slot must be 0..3");
    }
}

nlohmann::json BellCandidate::to_json() const {
    return {{"A1", polynomial_to_json(a1)},
            {"A2", polynomial_to_json(a2)},
            {"B1", polynomial_to_json(b1)},
            {"B2", polynomial_to_json(b2)}};
}

void validate_candidate(const BellCandidate& c, double sa_tol, double norm_tol) {
    static constexpr const char* names[] = {"A1", "A2", "B1", "B2"};
    for (int i = 0; i < 4; ++i) {
        const auto& p = c.slot(i);
        if (p.dim() != 2) throw UsageError(std::string(names[i]) + " must be a polynomial over R^2");
        if (!is_self_adjoint(p, sa_tol)) throw UsageError(std::string(names[i]) + " is not self-adjoint");
        if (one_norm(p) > 1.0 + norm_tol)
            throw UsageError(std::string(names[i]) + " is not a certified contraction (one_norm " +
                             std::to_string(one_norm(p)) + ")");
    }
}

WeylPolynomial bell_operator(const BellCandidate& c) {
    validate_candidate(c);
    const auto a1 = tensor_embed(c.a1, 1), a2 = tensor_embed(c.a2, 1);
    const auto b1 = tensor_embed(c.b1, 2), b2 = tensor_embed(c.b2, 2);
    WeylPolynomial r = weyl_multiply(a1, b1 + b2) + weyl_multiply(a2, b1 - b2);
    r *= 0.5;
    return r;
}

Complex bell_expectation(const StateFunctional& state, const BellCandidate& c) {
    return state.eval_poly(bell_operator(c));
}

double bell_value(const StateFunctional& state, const BellCandidate& c) {
    const Complex v = bell_expectation(state, c);
    if (std::abs(v.imag()) > 1e-10)
        throw VerificationError("Bell expectation has imaginary part " + std::to_string(v.imag()));
    return v.real();
}

FamilyAngles optimal_family_angles(double kappa) {
    using std::numbers::pi;
    return {0.0, pi / 2, -pi / 4 - kappa, pi / 4 - kappa};
}

BellCandidate monomial_family_candidate(const Rational& a, const Rational& b, const FamilyAngles& angles) {
    if (a.is_zero() && b.is_zero()) throw UsageError("monomial family requires (a,b) != (0,0)");
    auto observable = [](const PhasePoint& x, double angle) {
        WeylPolynomial p(2);
        p.add_term(x, 0.5 * std::polar(1.0, angle));
        p.add_term(-x, 0.5 * std::polar(1.0, -angle));
        return p;
    };
    const PhasePoint first{a, b};
    const PhasePoint second{-a, b};
    BellCandidate c;
    c.a1 = observable(first, angles.alpha1);
    c.a2 = observable(first, angles.alpha2);
    c.b1 = observable(second, angles.beta1);
    c.b2 = observable(second, angles.beta2);
    return c;
}

double monomial_family_value(const Rational& a, const Rational& b, const FamilyAngles& angles,
                             const StateFunctional& state) {
    if (state.kind() != StateKind::Epr) throw UsageError("monomial family closed form holds for the EPR state");
    if (a.is_zero() && b.is_zero()) throw UsageError("monomial family requires (a,b) != (0,0)");
    const double kappa = a.to_double() * state.lambda() + b.to_double() * state.mu();
    auto phi = [&](double alpha, double beta) { return std::cos(alpha + beta + kappa); };
    return 0.25 * (phi(angles.alpha1, angles.beta1) + phi(angles.alpha1, angles.beta2) +
                   phi(angles.alpha2, angles.beta1) - phi(angles.alpha2, angles.beta2));
}

// ---------------------------------------------------------------------------
// Search configuration

void SearchConfig::validate() const {
    if (restarts < 1) throw UsageError("restarts must be >= 1");
    if (max_iters < 1) throw UsageError("max_iters must be >= 1");
    if (!(initial_step > 0) || !(step_decay > 0 && step_decay < 1) || !(step_floor > 0))
        throw UsageError("invalid step schedule");
    for (const auto& supp : supports) {
        if (supp.empty()) throw UsageError("every support must be non-empty");
        std::set<PhasePoint> pts;
        for (const auto& x : supp) {
            if (x.dim() != 2) throw UsageError("support points must lie in R^2");
            if (!pts.insert(x).second) throw UsageError("duplicate support point " + x.to_string());
        }
        for (const auto& x : supp)
            if (!pts.contains(-x)) throw UsageError("support is not closed under negation at " + x.to_string());
    }
    const std::size_t a = supports[0].size() + supports[1].size();
    const std::size_t b = std::max(supports[2].size(), supports[3].size());
    if (a * b * 2 > term_cap)
        throw ResourceError("Bell operator would exceed term cap " + std::to_string(term_cap));
}

SearchConfig SearchConfig::monomial_family(const Rational& a, const Rational& b) {
    SearchConfig cfg;
    const PhasePoint x{a, b};
    const PhasePoint y{-a, b};
    cfg.supports = {std::vector{x, -x}, std::vector{x, -x}, std::vector{y, -y}, std::vector{y, -y}};
    return cfg;
}

nlohmann::json SearchConfig::to_json() const {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& supp : supports) s.push_back(points_to_json(supp));
    return {{"supports", s}, {"restarts", restarts}, {"max_iters", max_iters}, {"seed", seed}};
}

SearchConfig SearchConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("supports")) throw UsageError("search config needs a 'supports' field");
    SearchConfig cfg;
    const auto& s = j.at("supports");
    if (!s.is_array()) throw UsageError("'supports' must be an array of point lists");
    std::vector<std::vector<PhasePoint>> lists;
    for (const auto& l : s) lists.push_back(points_from_json(l));
    if (lists.size() == 1)
        cfg.supports = {lists[0], lists[0], lists[0], lists[0]};
    else if (lists.size() == 2)
        cfg.supports = {lists[0], lists[0], lists[1], lists[1]};
    else if (lists.size() == 4)
        cfg.supports = {lists[0], lists[1], lists[2], lists[3]};
    else
        throw UsageError("'supports' must hold 1, 2 or 4 point lists");
    try {
        cfg.restarts = j.value("restarts", cfg.restarts);
        cfg.max_iters = j.value("max_iters", cfg.max_iters);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("search config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------------------
// Optimizer

namespace {

// Real parameters of one self-adjoint slot: one per fixed point x = 0, two
// (re, im of the coefficient of x) per orbit {x, -x}.
struct SlotLayout {
    std::vector<PhasePoint> points;        // support order used by the kernel tables
    std::vector<std::size_t> rep;          // orbit representative index
    std::vector<std::size_t> partner;      // index of -x
    std::vector<std::size_t> offset;       // parameter offset per orbit representative
    std::size_t n_params = 0;
};

SlotLayout make_layout(const std::vector<PhasePoint>& supp) {
    SlotLayout l;
    l.points = supp;
    std::sort(l.points.begin(), l.points.end());
    const std::size_t n = l.points.size();
    l.rep.resize(n);
    l.partner.resize(n);
    l.offset.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const PhasePoint neg = -l.points[i];
        l.partner[i] = static_cast<std::size_t>(std::lower_bound(l.points.begin(), l.points.end(), neg) -
                                                l.points.begin());
        l.rep[i] = std::max(i, l.partner[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (l.rep[i] != i) continue;
        l.offset[i] = l.n_params;
        l.n_params += l.partner[i] == i ? 1 : 2;
    }
    return l;
}

ComplexVector coefficients(const SlotLayout& l, const double* params) {
    const auto n = static_cast<Eigen::Index>(l.points.size());
    ComplexVector c(n);
    for (std::size_t i = 0; i < l.points.size(); ++i) {
        const std::size_t r = l.rep[i];
        const double* p = params + l.offset[r];
        Complex v = l.partner[r] == r ? Complex(p[0], 0.0) : Complex(p[0], p[1]);
        if (r != i) v = std::conj(v);
        c(static_cast<Eigen::Index>(i)) = v;
    }
    const double norm = c.cwiseAbs().sum();
    if (norm > 1.0) c /= norm;
    return c;
}

WeylPolynomial to_polynomial(const SlotLayout& l, const ComplexVector& c) {
    WeylPolynomial p(2);
    for (std::size_t i = 0; i < l.points.size(); ++i) p.add_term(l.points[i], c(static_cast<Eigen::Index>(i)));
    return p;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform in [-1, 1) built directly from the engine bits so runs reproduce
// across standard library implementations.
double uniform_pm1(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0; }

struct Problem {
    std::array<SlotLayout, 4> slots;
    std::array<ComplexMatrix, 4> tables; // (A1,B1), (A1,B2), (A2,B1), (A2,B2): omega(W(x) x W(y))
    std::size_t n_params = 0;

    Problem(const StateFunctional& state, const SearchConfig& cfg) {
        for (int s = 0; s < 4; ++s) {
            slots[static_cast<std::size_t>(s)] = make_layout(cfg.supports[static_cast<std::size_t>(s)]);
            n_params += slots[static_cast<std::size_t>(s)].n_params;
        }
        int t = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 2; j < 4; ++j) {
                const auto& left = slots[static_cast<std::size_t>(i)].points;
                const auto& right = slots[static_cast<std::size_t>(j)].points;
                ComplexMatrix k(static_cast<Eigen::Index>(left.size()), static_cast<Eigen::Index>(right.size()));
                for (std::size_t x = 0; x < left.size(); ++x)
                    for (std::size_t y = 0; y < right.size(); ++y)
                        k(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                            state.eval_point(concat(left[x], right[y]));
                tables[static_cast<std::size_t>(t++)] = std::move(k);
            }
    }

    std::array<ComplexVector, 4> unpack(const std::vector<double>& params) const {
        std::array<ComplexVector, 4> c;
        std::size_t off = 0;
        for (std::size_t s = 0; s < 4; ++s) {
            c[s] = coefficients(slots[s], params.data() + off);
            off += slots[s].n_params;
        }
        return c;
    }

    // Embedded factors carry no cross phase, so omega(A x B) = a^T K b.
    double value(const std::vector<double>& params) const {
        const auto c = unpack(params);
        auto corr = [&](int t, std::size_t i, std::size_t j) {
            return (c[i].transpose() * tables[static_cast<std::size_t>(t)] * c[j])(0, 0);
        };
        const Complex v = 0.5 * (corr(0, 0, 2) + corr(1, 0, 3) + corr(2, 1, 2) - corr(3, 1, 3));
        return v.real();
    }

    BellCandidate candidate(const std::vector<double>& params) const {
        const auto c = unpack(params);
        BellCandidate out;
        out.a1 = to_polynomial(slots[0], c[0]);
        out.a2 = to_polynomial(slots[1], c[1]);
        out.b1 = to_polynomial(slots[2], c[2]);
        out.b2 = to_polynomial(slots[3], c[3]);
        return out;
    }
};

struct RestartOutcome {
    std::vector<double> params;
    double value = -1e300;
    std::vector<std::pair<int, double>> trace;
    double max_evaluated = -1e300;
    std::size_t evaluations = 0;
};

RestartOutcome run_restart(const Problem& problem, const SearchConfig& cfg, int restart) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(restart))));
    RestartOutcome out;
    out.params.resize(problem.n_params);
    for (auto& p : out.params) p = uniform_pm1(rng);

    auto evaluate = [&](const std::vector<double>& p) {
        const double v = problem.value(p);
        ++out.evaluations;
        out.max_evaluated = std::max(out.max_evaluated, v);
        return v;
    };
    out.value = evaluate(out.params);
    double step = cfg.initial_step;
    for (int iter = 1; iter <= cfg.max_iters && step >= cfg.step_floor; ++iter) {
        bool improved = false;
        for (std::size_t k = 0; k < out.params.size(); ++k) {
            for (double dir : {1.0, -1.0}) {
                std::vector<double> trial = out.params;
                trial[k] += dir * step;
                const double v = evaluate(trial);
                if (v > out.value) {
                    out.params = std::move(trial);
                    out.value = v;
                    improved = true;
                    break;
                }
            }
        }
        out.trace.emplace_back(iter, out.value);
        if (!improved) step *= cfg.step_decay;
    }
    return out;
}

// Ordering for the reduction over restarts: higher value, then fewer terms,
// then lexicographically smaller supports.
bool preferred(double va, const BellCandidate& a, double vb, const BellCandidate& b) {
    if (std::abs(va - vb) > 1e-12) return va > vb;
    if (a.term_count() != b.term_count()) return a.term_count() < b.term_count();
    for (int s = 0; s < 4; ++s) {
        const auto& ta = a.slot(s).terms();
        const auto& tb = b.slot(s).terms();
        const bool less = std::lexicographical_compare(
            ta.begin(), ta.end(), tb.begin(), tb.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        const bool greater = std::lexicographical_compare(
            tb.begin(), tb.end(), ta.begin(), ta.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        if (less != greater) return less;
    }
    return false;
}

} // namespace

SearchResult optimize_bell(const StateFunctional& state, const SearchConfig& cfg) {
    cfg.validate();
    const Problem problem(state, cfg);

    std::vector<std::future<RestartOutcome>> jobs;
    jobs.reserve(static_cast<std::size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r)
        jobs.push_back(std::async(std::launch::async, run_restart, std::cref(problem), std::cref(cfg), r));

    SearchResult result;
    result.max_evaluated = -1e300;
    bool have = false;
    for (int r = 0; r < cfg.restarts; ++r) {
        RestartOutcome o = jobs[static_cast<std::size_t>(r)].get();
        result.max_evaluated = std::max(result.max_evaluated, o.max_evaluated);
        result.evaluations += o.evaluations;
        BellCandidate cand = problem.candidate(o.params);
        if (!have || preferred(o.value, cand, result.value, result.best)) {
            have = true;
            result.best = std::move(cand);
            result.value = o.value;
            result.best_restart = r;
            result.trace = std::move(o.trace);
        }
    }
    const double engine = bell_value(state, result.best);
    if (std::abs(engine - result.value) > 1e-10)
        throw VerificationError("optimizer value " + std::to_string(result.value) +
                                " disagrees with Weyl-product evaluation " + std::to_string(engine));
    return result;
}

// ---------------------------------------------------------------------------
// Doubles

DoubleReport double_deviation(const Rational& a, const Rational& b, const PhasePoint& partner, Complex phase,
                              const StateFunctional& state) {
    if (partner.dim() != 2) throw UsageError("double partner must be a 2-point");
    const auto u = tensor_embed(WeylPolynomial::monomial(PhasePoint{a, b}), 1);
    const auto u2 = tensor_embed(WeylPolynomial::monomial(partner, phase), 2);
    DoubleReport r;
    r.partner = partner;
    r.phase = phase;
    const auto diff = u - u2;
    r.deviation = state.eval_poly(weyl_multiply(adjoint(diff), diff)).real();
    r.closed_form = 2.0 - 2.0 * state.eval_poly(weyl_multiply(adjoint(u), u2)).real();
    const auto sa = (u + adjoint(u)) - (u2 + adjoint(u2));
    r.self_adjoint_deviation = state.eval_poly(weyl_multiply(sa, sa)).real();
    return r;
}

DoubleReport weyl_double(const Rational& a, const Rational& b, const StateFunctional& state) {
    if (state.kind() != StateKind::Epr) throw UsageError("Weyl doubles are constructed for the EPR state");
    const Complex phase = std::polar(1.0, a.to_double() * state.lambda() + b.to_double() * state.mu());
    return double_deviation(a, b, PhasePoint{a, -b}, phase, state);
}

} // namespace eprweyl
