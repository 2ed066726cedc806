#include "sunland/sun_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sunland/errors.hpp"

namespace sunland {

namespace {

double scale_of(const ComplexMatrix& m) { return std::max(1.0, frobenius_norm(m)); }

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

Complex checked_det_off_west_pole(const UnitaryPoint& u, const char* what) {
  const Complex d = determinant(u.matrix());
  if (std::abs(d + 1.0) < kWestPoleTol) {
    std::ostringstream msg;
    msg << what << ": det U = " << d << " is at the west pole of the chart";
    throw WestPoleError(msg.str());
  }
  return d;
}

}  // namespace

UnitaryPoint::UnitaryPoint(ComplexMatrix u) : u_(std::move(u)) {
  require_square_finite(u_, "UnitaryPoint");
  const double residual = unitarity_residual(u_);
  if (residual > kAdmissionTol) {
    std::ostringstream msg;
    msg << "matrix is not unitary: ||U^dagger U - I||_F = " << residual;
    throw InvariantError(msg.str());
  }
}

SpecialUnitaryPoint::SpecialUnitaryPoint(ComplexMatrix s) : UnitaryPoint(std::move(s)) {
  const double residual = std::abs(determinant(u_) - 1.0);
  if (residual > kAdmissionTol) {
    std::ostringstream msg;
    msg << "matrix is not in SU(N): |det S - 1| = " << residual;
    throw InvariantError(msg.str());
  }
}

SpecialUnitaryPoint SpecialUnitaryPoint::identity(Eigen::Index n) {
  return SpecialUnitaryPoint(sunland::identity(n));
}

TangentDirection::TangentDirection(ComplexMatrix omega) : omega_(std::move(omega)) {
  require_square_finite(omega_, "TangentDirection");
  const double scale = scale_of(omega_);
  const double residual = skew_residual(omega_);
  if (residual > kAlgebraTol * scale) {
    std::ostringstream msg;
    msg << "direction is not skew-Hermitian: ||W + W^dagger||_F = " << residual;
    throw PreconditionError(msg.str());
  }
  traceless_ = std::abs(omega_.trace()) <= kAlgebraTol * scale;
}

TangentDirection TangentDirection::traceless(ComplexMatrix omega) {
  TangentDirection dir(std::move(omega));
  if (!dir.traceless_) {
    std::ostringstream msg;
    msg << "direction is not traceless: tr W = " << dir.omega_.trace();
    throw PreconditionError(msg.str());
  }
  return dir;
}

TangentDirection SuNBasis::combine(const RealVector& coeffs) const {
  if (coeffs.size() != size()) {
    throw DimensionError("SuNBasis::combine: coefficient vector has wrong length");
  }
  ComplexMatrix omega = ComplexMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < size(); ++a) {
    omega += coeffs(a) * elements[static_cast<std::size_t>(a)].omega();
  }
  return TangentDirection::traceless(std::move(omega));
}

RealVector SuNBasis::coordinates(const TangentDirection& dir) const {
  require_same_dim(dir.dim(), n, "SuNBasis::coordinates");
  RealVector coords(size());
  for (Eigen::Index a = 0; a < size(); ++a) {
    coords(a) = metric(elements[static_cast<std::size_t>(a)], dir);
  }
  return coords;
}

double ambient_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "ambient_inner");
  require_same_dim(a.cols(), b.cols(), "ambient_inner");
  // Re tr(a^dagger b) = Re sum_ij conj(a_ij) b_ij
  return 0.5 * a.cwiseProduct(b.conjugate()).sum().real();
}

double metric(const TangentDirection& v, const TangentDirection& w) {
  return ambient_inner(v.omega(), w.omega());
}

double metric(const TangentDirection& v, const TangentDirection& w, const UnitaryPoint& base) {
  require_same_dim(v.dim(), base.dim(), "metric");
  return metric(v, w);
}

double metric_norm(const TangentDirection& v) { return std::sqrt(metric(v, v)); }

double f_hw(const UnitaryPoint& u) {
  const Complex d = checked_det_off_west_pole(u, "f_hw");
  return d.imag() / (d.real() + 1.0);
}

double f_hw_differential(const UnitaryPoint& u, const TangentDirection& dir) {
  require_same_dim(u.dim(), dir.dim(), "f_hw_differential");
  const Complex d = checked_det_off_west_pole(u, "f_hw_differential");
  const Complex value = -2.0 * kI * d * dir.omega().trace() / ((d + 1.0) * (d + 1.0));
  return value.real();
}

ComplexMatrix grad_f_hw(const UnitaryPoint& u) {
  const Complex d = checked_det_off_west_pole(u, "grad_f_hw");
  const double factor = 4.0 * (d / ((d + 1.0) * (d + 1.0))).real();
  return factor * kI * u.matrix();
}

ComplexMatrix grad_f_hw(const SpecialUnitaryPoint& s) { return kI * s.matrix(); }

double hess_f_hw_quadratic(const UnitaryPoint& u, const TangentDirection& dir) {
  require_same_dim(u.dim(), dir.dim(), "hess_f_hw_quadratic");
  const Complex d = checked_det_off_west_pole(u, "hess_f_hw_quadratic");
  const Complex tr = dir.omega().trace();
  const Complex dp1 = d + 1.0;
  const Complex value = 2.0 * kI * d * tr * tr * (d - 1.0) / (dp1 * dp1 * dp1);
  if (std::abs(value.imag()) > kAlgebraTol * std::max(1.0, std::abs(value))) {
    std::ostringstream msg;
    msg << "hess_f_hw_quadratic: imaginary part " << value.imag() << " did not cancel";
    throw Error(msg.str());
  }
  return value.real();
}

ComplexMatrix sun_gradient(const SpecialUnitaryPoint& s, const ComplexMatrix& grad_ambient) {
  require_same_dim(s.dim(), grad_ambient.rows(), "sun_gradient");
  require_square_finite(grad_ambient, "sun_gradient");
  const ComplexMatrix& sm = s.matrix();
  const ComplexMatrix omega = grad_ambient * sm.adjoint();
  const double residual = skew_residual(omega);
  if (residual > kAdmissionTol * scale_of(grad_ambient)) {
    std::ostringstream msg;
    msg << "sun_gradient: ambient gradient is not tangent to U(N) (||W + W^dagger||_F = "
        << residual << ")";
    throw PreconditionError(msg.str());
  }
  const auto n = static_cast<double>(s.dim());
  const Complex tr = (sm.adjoint() * grad_ambient).trace();
  return grad_ambient - (tr / n) * sm;
}

embedded::ConstraintSystem<ComplexMatrix> sun_constraint_system() {
  embedded::Constraint<ComplexMatrix> f;
  f.gradient = [](const ComplexMatrix& point) { return grad_f_hw(UnitaryPoint(point)); };
  f.hessian_quadratic = [](const ComplexMatrix& point, const ComplexMatrix& v) {
    return hess_f_hw_quadratic(UnitaryPoint(point), TangentDirection(v * point.adjoint()));
  };
  return {f};
}

SpecialUnitaryPoint geodesic_step(const SpecialUnitaryPoint& s, const TangentDirection& dir,
                                  double t) {
  require_same_dim(s.dim(), dir.dim(), "geodesic_step");
  if (!dir.is_traceless()) {
    throw PreconditionError("geodesic_step: direction must be traceless");
  }
  return SpecialUnitaryPoint(expm_skew(t * dir.omega()) * s.matrix());
}

SpecialUnitaryPoint nearest_special_unitary(const ComplexMatrix& m) {
  require_square_finite(m, "nearest_special_unitary");
  // m = W P with P = (m^dagger m)^{1/2}; W = m P^{-1}.
  const HermitianEig eig = hermitian_eig(m.adjoint() * m);
  if (eig.values.minCoeff() <= 0.0) {
    throw PreconditionError("nearest_special_unitary: matrix is singular");
  }
  const RealVector inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
  const ComplexMatrix w =
      m * eig.vectors * inv_sqrt.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  const double theta = std::arg(determinant(w));
  return SpecialUnitaryPoint(std::polar(1.0, -theta / static_cast<double>(m.rows())) * w);
}

UnitaryPoint random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  if (n < 1) {
    throw PreconditionError("random_unitary: n must be positive");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Rephase columns by r_jj / |r_jj| so Q is Haar distributed.
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) {
      q.col(j) *= rjj / mag;
    }
  }
  return UnitaryPoint(std::move(q));
}

SpecialUnitaryPoint random_special_unitary(Eigen::Index n, std::mt19937_64& rng) {
  if (n < 2) {
    throw PreconditionError("random_special_unitary: n must be at least 2");
  }
  const UnitaryPoint u = random_unitary(n, rng);
  const double theta = std::arg(determinant(u.matrix()));
  return SpecialUnitaryPoint(std::polar(1.0, -theta / static_cast<double>(n)) * u.matrix());
}

SpecialUnitaryPoint random_special_unitary(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_special_unitary(n, rng);
}

TangentDirection random_su_direction(Eigen::Index n, std::mt19937_64& rng, double norm) {
  return random_su_direction(sun_basis(n), rng, norm);
}

TangentDirection random_su_direction(const SuNBasis& basis, std::mt19937_64& rng, double norm) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector coeffs(basis.size());
  for (Eigen::Index a = 0; a < coeffs.size(); ++a) {
    coeffs(a) = normal(rng);
  }
  const double len = coeffs.norm();
  if (len > 0.0) {
    coeffs *= norm / len;
  }
  return basis.combine(coeffs);
}

TangentDirection random_u_direction(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix x(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      x(i, j) = Complex(re, im);
    }
  }
  return TangentDirection(0.5 * (x - x.adjoint()));
}

SuNBasis sun_basis(Eigen::Index n) {
  if (n < 2) {
    throw PreconditionError("sun_basis: n must be at least 2");
  }
  SuNBasis basis;
  basis.n = n;
  basis.elements.reserve(static_cast<std::size_t>(n * n - 1));
  // Off-diagonal symmetric and antisymmetric generators.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = kI;
      sym(k, j) = kI;
      basis.elements.push_back(TangentDirection::traceless(std::move(sym)));

      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(j, k) = 1.0;
      anti(k, j) = -1.0;
      basis.elements.push_back(TangentDirection::traceless(std::move(anti)));
    }
  }
  // Diagonal generators sqrt(2 / (l (l + 1))) (sum_{j<l} E_jj - l E_ll), times i.
  for (Eigen::Index l = 1; l < n; ++l) {
    const auto ld = static_cast<double>(l);
    const double c = std::sqrt(2.0 / (ld * (ld + 1.0)));
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < l; ++j) {
      diag(j, j) = kI * c;
    }
    diag(l, l) = -kI * c * ld;
    basis.elements.push_back(TangentDirection::traceless(std::move(diag)));
  }
  return basis;
}

}  // namespace sunland
