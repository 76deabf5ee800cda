#include "eprweyl/matrix_surrogate.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eprweyl/errors.hpp"

namespace eprweyl {

namespace {

void require_invariant(bool ok, const char* what) {
    if (!ok) throw VerificationError(std::string("matrix model invariant failed: ") + what);
}

void require_square(const MatrixModel& model, const ComplexMatrix& a) {
    if (a.rows() != model.dim() || a.cols() != model.dim())
        throw UsageError("operator does not match model dimension " + std::to_string(model.dim()));
}

} // namespace

MatrixModel build_model(int m) {
    if (m < 2 || m > kMaxModelDim || m % 2 != 0)
        throw UsageError("model dimension must be even and in [2, " + std::to_string(kMaxModelDim) + "], got " +
                         std::to_string(m));
    MatrixModel model;
    model.m_ = m;
    const int half = m / 2;
    model.omega_ = ComplexMatrix::Identity(m, m) / std::sqrt(static_cast<double>(m));
    model.p_ = ComplexMatrix::Zero(m, m);
    model.v_ = ComplexMatrix::Zero(m, m);
    for (int i = 0; i < half; ++i) {
        model.p_(i, i) = 1.0;
        model.v_(i, i + half) = 1.0;
    }

    constexpr double tol = 1e-13;
    const ComplexMatrix id = ComplexMatrix::Identity(m, m);
    const auto& v = model.v_;
    const auto& p = model.p_;
    require_invariant((v * v.adjoint() - p).norm() <= tol, "V V* = P");
    require_invariant((v.adjoint() * v - (id - p)).norm() <= tol, "V* V = I - P");
    require_invariant((v * v).norm() <= tol, "V^2 = 0");
    require_invariant((v.adjoint() * v.adjoint()).norm() <= tol, "(V*)^2 = 0");
    require_invariant(std::abs(inner(model.omega_, model.omega_) - 1.0) <= tol, "|Omega| = 1");
    require_invariant(std::abs(expectation_first(model, p) - 0.5) <= tol, "<Omega, P Omega> = 1/2");
    // <Omega, (A x I) Omega> = tr(A Psi Psi*) equals tr(A)/m for every A iff Psi Psi* = I/m.
    const ComplexMatrix reduced = model.omega_ * model.omega_.adjoint();
    require_invariant((reduced - id / static_cast<double>(m)).norm() <= tol, "trace vector");
    return model;
}

ComplexMatrix apply_first(const ComplexMatrix& a, const ComplexMatrix& psi) { return a * psi; }

ComplexMatrix apply_second(const ComplexMatrix& b, const ComplexMatrix& psi) { return psi * b.transpose(); }

Complex inner(const ComplexMatrix& phi, const ComplexMatrix& psi) { return phi.conjugate().cwiseProduct(psi).sum(); }

Complex expectation_first(const MatrixModel& model, const ComplexMatrix& a) {
    require_square(model, a);
    return inner(model.omega(), apply_first(a, model.omega()));
}

Complex expectation(const MatrixModel& model, const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(model, a);
    require_square(model, b);
    return inner(model.omega(), apply_first(a, apply_second(b, model.omega())));
}

ComplexMatrix a_theta(const MatrixModel& model, double theta) {
    const auto& v = model.partial_isometry();
    return std::polar(1.0, theta) * v + std::polar(1.0, -theta) * v.adjoint();
}

ComplexMatrix gamma(const MatrixModel& model, const ComplexMatrix& a) {
    require_square(model, a);
    return a.transpose();
}

double correlation(const MatrixModel& model, double theta1, double theta2) {
    return expectation_first(model, a_theta(model, theta1) * a_theta(model, theta2)).real();
}

ChshAngles optimal_chsh_angles() {
    using std::numbers::pi;
    return {0.0, pi / 2, pi / 4, -pi / 4};
}

double chsh_value(const MatrixModel& model, const ChshAngles& angles) {
    const ComplexMatrix a1 = a_theta(model, angles.a1);
    const ComplexMatrix a2 = a_theta(model, angles.a2);
    const ComplexMatrix b1 = gamma(model, a_theta(model, angles.b1));
    const ComplexMatrix b2 = gamma(model, a_theta(model, angles.b2));
    const Complex v = 0.5 * (expectation(model, a1, b1) + expectation(model, a1, b2) + expectation(model, a2, b1) -
                             expectation(model, a2, b2));
    return v.real();
}

double chsh_value(const MatrixModel& model) { return chsh_value(model, optimal_chsh_angles()); }

double double_deviation(const MatrixModel& model, const ComplexMatrix& a, const ComplexMatrix& partner) {
    require_square(model, a);
    require_square(model, partner);
    auto apply_diff = [&](const ComplexMatrix& psi) -> ComplexMatrix {
        return apply_first(a, psi) - apply_second(partner, psi);
    };
    return inner(model.omega(), apply_diff(apply_diff(model.omega()))).real();
}

MatrixDouble double_of(const MatrixModel& model, const ComplexMatrix& a) {
    require_square(model, a);
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw UsageError("double_of requires a self-adjoint operator");
    MatrixDouble out;
    out.double_op = gamma(model, a);
    out.deviation = double_deviation(model, a, out.double_op);
    return out;
}

Eigen::Index cyclic_rank(const MatrixModel& model) {
    const int m = model.dim();
    ComplexMatrix stacked(m * m, m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(m, m);
            e(i, j) = 1.0;
            const ComplexMatrix v = apply_first(e, model.omega());
            stacked.col(i * m + j) = Eigen::Map<const ComplexVector>(v.data(), m * m);
        }
    Eigen::FullPivLU<ComplexMatrix> lu(stacked);
    lu.setThreshold(1e-10);
    return lu.rank();
}

std::vector<double> angle_grid(double step) {
    if (!(step > 0)) throw UsageError("grid step must be positive");
    std::vector<double> grid;
    const double pi = std::numbers::pi;
    for (int i = 0;; ++i) {
        const double t = -pi + i * step;
        if (t > pi + 1e-15) break;
        grid.push_back(t);
    }
    return grid;
}

double correlation_grid_error(const MatrixModel& model, double step) {
    const auto grid = angle_grid(step);
    std::vector<ComplexMatrix> vecs;
    vecs.reserve(grid.size());
    for (double t : grid) vecs.push_back(apply_first(a_theta(model, t), model.omega()));
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const Complex v = inner(vecs[i], vecs[j]);
            worst = std::max(worst, std::abs(v - std::cos(grid[i] - grid[j])));
        }
    return worst;
}

double chsh_grid_max(const MatrixModel& model, double step) {
    const auto grid = angle_grid(step);
    const std::size_t n = grid.size();
    // E[a][b] = <Omega, (A(t_a) x gamma(A(t_b))) Omega>
    std::vector<ComplexMatrix> left, right;
    for (double t : grid) {
        left.push_back(apply_first(a_theta(model, t), model.omega()));
        right.push_back(apply_second(gamma(model, a_theta(model, t)), model.omega()));
    }
    std::vector<double> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = inner(left[a], right[b]).real();
    std::vector<double> e0(n);
    for (std::size_t b = 0; b < n; ++b) e0[b] = expectation(model, a_theta(model, 0.0), gamma(model, a_theta(model, grid[b]))).real();

    double best = -1e300;
    for (std::size_t a2 = 0; a2 < n; ++a2) {
        const double* row = &table[a2 * n];
        for (std::size_t b1 = 0; b1 < n; ++b1) {
            const double base = e0[b1] + row[b1];
            for (std::size_t b2 = 0; b2 < n; ++b2) best = std::max(best, 0.5 * (base + e0[b2] - row[b2]));
        }
    }
    return best;
}

} // namespace eprweyl
