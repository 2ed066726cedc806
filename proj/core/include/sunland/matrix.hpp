#pragma once

// Dense complex matrix arithmetic shared by every other module. All routines
// are thin, checked wrappers over Eigen.

#include <complex>

#include <Eigen/Dense>

namespace sunland {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

ComplexMatrix identity(Eigen::Index n);

/// Throws DimensionError unless `a` is square, and PreconditionError on NaN/Inf.
void require_square_finite(const ComplexMatrix& a, const char* what);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

/// LU with partial pivoting. Singular input yields 0.
Complex determinant(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);

/// ||a - a^dagger||_F
double hermiticity_residual(const ComplexMatrix& a);
/// ||a + a^dagger||_F
double skew_residual(const ComplexMatrix& a);
/// ||a^dagger a - I||_F
double unitarity_residual(const ComplexMatrix& a);

struct HermitianEig {
  RealVector values;      ///< sorted descending
  ComplexMatrix vectors;  ///< columns are the matching orthonormal eigenvectors
};

/// Spectral decomposition h = V diag(values) V^dagger with descending eigenvalues.
/// Throws PreconditionError unless ||h - h^dagger||_F <= 1e-10 max(1, ||h||_F).
HermitianEig hermitian_eig(const ComplexMatrix& h);

/// exp(omega) for skew-Hermitian omega, evaluated as Q diag(e^{i lambda}) Q^dagger
/// from the eigendecomposition of the Hermitian matrix -i omega, so the result
/// is unitary to working precision.
ComplexMatrix expm_skew(const ComplexMatrix& omega);

/// exp(omega) - I for skew-Hermitian omega. Uses e^{i x} - 1 = 2i sin(x/2) e^{i x/2},
/// which keeps full relative accuracy when omega is small. Used wherever a
/// function difference f(exp(omega) s) - f(s) is needed below round-off of f.
ComplexMatrix expm1_skew(const ComplexMatrix& omega);

}  // namespace sunland
