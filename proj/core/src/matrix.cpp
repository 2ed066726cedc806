#include "sunland/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sunland/errors.hpp"

namespace sunland {

namespace {

constexpr double kStructureTol = 1e-10;

struct SkewSpectrum {
  RealVector angles;  // eigenvalues of -i omega
  ComplexMatrix basis;
};

SkewSpectrum skew_spectrum(const ComplexMatrix& omega, const char* what) {
  require_square_finite(omega, what);
  const double residual = skew_residual(omega);
  if (residual > kStructureTol * std::max(1.0, frobenius_norm(omega))) {
    std::ostringstream msg;
    msg << what << ": input is not skew-Hermitian (||W + W^dagger||_F = " << residual << ")";
    throw PreconditionError(msg.str());
  }
  ComplexMatrix h = -kI * omega;
  h = (0.5 * (h + h.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(std::string(what) + ": eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

void require_square_finite(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(msg.str());
  }
  if (!a.allFinite()) {
    throw PreconditionError(std::string(what) + ": matrix has non-finite entries");
  }
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != a.cols() || b.rows() != b.cols()) {
    std::ostringstream msg;
    msg << "multiply: dimension mismatch " << a.rows() << "x" << a.cols() << " * " << b.rows()
        << "x" << b.cols();
    throw DimensionError(msg.str());
  }
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

Complex determinant(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("determinant: matrix is not square");
  }
  if (a.rows() == 0) {
    return {1.0, 0.0};
  }
  return a.partialPivLu().determinant();
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double hermiticity_residual(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

double skew_residual(const ComplexMatrix& a) { return (a + a.adjoint()).norm(); }

double unitarity_residual(const ComplexMatrix& a) {
  return (a.adjoint() * a - ComplexMatrix::Identity(a.cols(), a.cols())).norm();
}

HermitianEig hermitian_eig(const ComplexMatrix& h) {
  require_square_finite(h, "hermitian_eig");
  const double residual = hermiticity_residual(h);
  if (residual > kStructureTol * std::max(1.0, frobenius_norm(h))) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian (||H - H^dagger||_F = " << residual << ")";
    throw PreconditionError(msg.str());
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigendecomposition did not converge");
  }
  // Eigen sorts ascending.
  return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

ComplexMatrix expm_skew(const ComplexMatrix& omega) {
  const auto [angles, q] = skew_spectrum(omega, "expm_skew");
  Eigen::VectorXcd phases(angles.size());
  for (Eigen::Index k = 0; k < angles.size(); ++k) {
    phases(k) = std::polar(1.0, angles(k));
  }
  return q * phases.asDiagonal() * q.adjoint();
}

ComplexMatrix expm1_skew(const ComplexMatrix& omega) {
  const auto [angles, q] = skew_spectrum(omega, "expm1_skew");
  Eigen::VectorXcd shifted(angles.size());
  for (Eigen::Index k = 0; k < angles.size(); ++k) {
    const double half = 0.5 * angles(k);
    shifted(k) = 2.0 * kI * std::sin(half) * std::polar(1.0, half);
  }
  return q * shifted.asDiagonal() * q.adjoint();
}

}  // namespace sunland
