#include "eprweyl/hermitian.hpp"

#include <limits>

#include "eprweyl/errors.hpp"

namespace eprweyl {

double hermitian_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.rows(); ++j)
        for (Eigen::Index k = j; k < m.cols(); ++k) worst = std::max(worst, std::abs(m(j, k) - std::conj(m(k, j))));
    return worst;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
    const double defect = hermitian_defect(m_);
    if (!(defect <= tol))
        throw UsageError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() == 0) return {};
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

PsdReport psd_check(const HermitianMatrix& m, double tol) {
    PsdReport r;
    if (m.size() == 0) {
        r.pass = true;
        return r;
    }
    r.min_eigenvalue = hermitian_eigenvalues(m.matrix())(0);
    r.pass = r.min_eigenvalue >= -tol;
    return r;
}

PsdReport psd_check(const ComplexMatrix& m, double tol) { return psd_check(HermitianMatrix(m, tol), tol); }

} // namespace eprweyl
