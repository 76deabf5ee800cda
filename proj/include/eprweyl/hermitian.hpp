#pragma once

#include <complex>

#include <Eigen/Dense>

namespace eprweyl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dense complex matrix known to be Hermitian within a stated tolerance.
class HermitianMatrix {
public:
    /// Throws UsageError if max |M - M^*| exceeds tol.
    explicit HermitianMatrix(ComplexMatrix m, double tol = 1e-12);

    [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
    [[nodiscard]] Eigen::Index size() const { return m_.rows(); }
    [[nodiscard]] std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    ComplexMatrix m_;
};

/// max_{j,k} |M_jk - conj(M_kj)|; infinity for non-square input.
double hermitian_defect(const ComplexMatrix& m);

struct PsdReport {
    double min_eigenvalue = 0.0;
    bool pass = false;
};

/// pass iff the smallest eigenvalue is >= -tol.
PsdReport psd_check(const HermitianMatrix& m, double tol);

/// Checks Hermiticity within tol first (UsageError otherwise), then as above.
PsdReport psd_check(const ComplexMatrix& m, double tol);

/// Ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

} // namespace eprweyl
