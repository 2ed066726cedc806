#include "sunland/fidelity_landscape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "sunland/errors.hpp"

namespace sunland {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

void require_su_target(const TargetGate& a, const char* what) {
  if (!a.su_mode()) {
    throw PreconditionError(std::string(what) + ": target gate must be in SU(N)");
  }
}

void require_traceless(const TangentDirection& dir, const char* what) {
  if (!dir.is_traceless()) {
    throw PreconditionError(std::string(what) + ": direction must be traceless");
  }
}

// S A^dagger + A S^dagger
ComplexMatrix hessian_kernel(const TargetGate& a, const UnitaryPoint& s) {
  const ComplexMatrix sa = s.matrix() * a.matrix().adjoint();
  return sa + sa.adjoint();
}

double checked_real(Complex value, double scale, const char* what) {
  if (std::abs(value.imag()) > kAlgebraTol * std::max(1.0, scale)) {
    std::ostringstream msg;
    msg << what << ": imaginary part " << value.imag() << " did not cancel";
    throw Error(msg.str());
  }
  return value.real();
}

constexpr std::array<std::pair<CriticalNature, std::string_view>, 6> kNatureNames{{
    {CriticalNature::GlobalMax, "GlobalMax"},
    {CriticalNature::GlobalMin, "GlobalMin"},
    {CriticalNature::LocalMaxNotGlobal, "LocalMaxNotGlobal"},
    {CriticalNature::LocalMinNotGlobal, "LocalMinNotGlobal"},
    {CriticalNature::Saddle, "Saddle"},
    {CriticalNature::Degenerate, "Degenerate"},
}};

}  // namespace

TargetGate::TargetGate(ComplexMatrix a) : a_(std::move(a)) {
  require_square_finite(a_, "TargetGate");
  const double residual = unitarity_residual(a_);
  if (residual > kAdmissionTol) {
    std::ostringstream msg;
    msg << "target gate is not unitary: ||A^dagger A - I||_F = " << residual;
    throw InvariantError(msg.str());
  }
  su_mode_ = std::abs(determinant(a_) - 1.0) <= kAdmissionTol;
}

TargetGate TargetGate::identity(Eigen::Index n) { return TargetGate(sunland::identity(n)); }

std::string_view to_string(CriticalNature nature) noexcept {
  for (const auto& [value, name] : kNatureNames) {
    if (value == nature) {
      return name;
    }
  }
  return "Unknown";
}

std::optional<CriticalNature> parse_nature(std::string_view name) noexcept {
  for (const auto& [value, label] : kNatureNames) {
    if (label == name) {
      return value;
    }
  }
  return std::nullopt;
}

double fidelity(const TargetGate& a, const UnitaryPoint& u) {
  require_same_dim(a.dim(), u.dim(), "fidelity");
  // Re tr(A^dagger U) = Re sum_ij conj(A_ij) U_ij
  return a.matrix().conjugate().cwiseProduct(u.matrix()).sum().real();
}

ComplexMatrix ambient_gradient(const TargetGate& a, const UnitaryPoint& u) {
  require_same_dim(a.dim(), u.dim(), "ambient_gradient");
  const ComplexMatrix au = a.matrix() * u.matrix().adjoint();
  return (au - au.adjoint()) * u.matrix();
}

ComplexMatrix sun_fidelity_gradient(const TargetGate& a, const SpecialUnitaryPoint& s) {
  require_su_target(a, "sun_fidelity_gradient");
  return sun_fidelity_direction(a, s).omega() * s.matrix();
}

TangentDirection sun_fidelity_direction(const TargetGate& a, const SpecialUnitaryPoint& s) {
  require_same_dim(a.dim(), s.dim(), "sun_fidelity_direction");
  const ComplexMatrix as = a.matrix() * s.matrix().adjoint();
  ComplexMatrix omega = as - as.adjoint();
  // Near a critical point with mu != 0 the diagonal is dominated by mu i, and one
  // subtraction leaves a rounding-level trace that pairs with the large normal
  // part of the ambient gradient. A second pass on the now small entries removes it.
  for (int pass = 0; pass < 2; ++pass) {
    const Complex shift = omega.trace() / static_cast<double>(s.dim());
    omega.diagonal().array() -= shift;
  }
  return TangentDirection::traceless(std::move(omega));
}

CriticalityResidual criticality_residual(const TargetGate& a, const SpecialUnitaryPoint& s) {
  require_same_dim(a.dim(), s.dim(), "criticality_residual");
  const ComplexMatrix as = a.matrix() * s.matrix().adjoint();
  ComplexMatrix x = as - as.adjoint();
  const double mu_hat = (-kI * x.trace()).real() / static_cast<double>(s.dim());
  x.diagonal().array() -= mu_hat * kI;
  return {mu_hat, frobenius_norm(x)};
}

double hessian_quadratic(const TargetGate& a, const SpecialUnitaryPoint& s,
                         const TangentDirection& dir) {
  require_same_dim(a.dim(), s.dim(), "hessian_quadratic");
  require_same_dim(dir.dim(), s.dim(), "hessian_quadratic");
  require_traceless(dir, "hessian_quadratic");
  const ComplexMatrix& w = dir.omega();
  const ComplexMatrix m = hessian_kernel(a, s);
  const Complex value = 0.5 * (w * w * m).trace();
  return checked_real(value, w.squaredNorm() * frobenius_norm(m), "hessian_quadratic");
}

double hessian_bilinear(const TargetGate& a, const SpecialUnitaryPoint& s,
                        const TangentDirection& d1, const TangentDirection& d2) {
  require_same_dim(a.dim(), s.dim(), "hessian_bilinear");
  require_traceless(d1, "hessian_bilinear");
  require_traceless(d2, "hessian_bilinear");
  const ComplexMatrix& w1 = d1.omega();
  const ComplexMatrix& w2 = d2.omega();
  const ComplexMatrix m = hessian_kernel(a, s);
  const Complex value = 0.25 * ((w1 * w2 + w2 * w1) * m).trace();
  return checked_real(value, w1.norm() * w2.norm() * frobenius_norm(m), "hessian_bilinear");
}

RealMatrix hessian_form_matrix(const TargetGate& a, const SpecialUnitaryPoint& s,
                               const SuNBasis& basis) {
  require_same_dim(a.dim(), s.dim(), "hessian_form_matrix");
  require_same_dim(basis.n, s.dim(), "hessian_form_matrix");
  const ComplexMatrix m = hessian_kernel(a, s);
  const Eigen::Index dim = basis.size();

  // tr(W_a W_b M) + tr(W_b W_a M) = tr(W_a (W_b M + M W_b)), so one
  // elementwise contraction per pair.
  std::vector<ComplexMatrix> sym_products;
  sym_products.reserve(static_cast<std::size_t>(dim));
  for (const auto& e : basis.elements) {
    sym_products.push_back((e.omega() * m + m * e.omega()).transpose());
  }

  RealMatrix h(dim, dim);
  double max_imag = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const ComplexMatrix& wi = basis.elements[static_cast<std::size_t>(i)].omega();
    for (Eigen::Index j = i; j < dim; ++j) {
      const Complex value =
          0.25 * wi.cwiseProduct(sym_products[static_cast<std::size_t>(j)]).sum();
      max_imag = std::max(max_imag, std::abs(value.imag()));
      h(i, j) = value.real();
      h(j, i) = value.real();
    }
  }
  if (max_imag > kAlgebraTol * std::max(1.0, frobenius_norm(m))) {
    std::ostringstream msg;
    msg << "hessian_form_matrix: imaginary part " << max_imag << " did not cancel";
    throw Error(msg.str());
  }
  return h;
}

HessianSpectrum classify_spectrum(RealVector eigenvalues) {
  std::sort(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  HessianSpectrum spectrum;
  const double largest = eigenvalues.size() > 0 ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  spectrum.zero_threshold = 1e-9 * std::max(1.0, largest);
  for (const double ev : eigenvalues) {
    if (ev > spectrum.zero_threshold) {
      ++spectrum.n_pos;
    } else if (ev < -spectrum.zero_threshold) {
      ++spectrum.n_neg;
    } else {
      ++spectrum.n_zero;
    }
  }
  spectrum.eigenvalues = std::move(eigenvalues);
  return spectrum;
}

HessianSpectrum hessian_matrix(const TargetGate& a, const SpecialUnitaryPoint& s,
                               const SuNBasis& basis) {
  const RealMatrix h = hessian_form_matrix(a, s, basis);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("hessian_matrix: eigendecomposition did not converge");
  }
  return classify_spectrum(solver.eigenvalues());
}

CriticalNature classify(const TargetGate& a, const SpecialUnitaryPoint& s,
                        const HessianSpectrum& spectrum, double global_max, double global_min) {
  require_su_target(a, "classify");
  const CriticalityResidual crit = criticality_residual(a, s);
  if (crit.residual > kCriticalTol) {
    std::ostringstream msg;
    msg << "classify: point is not critical (residual " << crit.residual << ")";
    throw NotCriticalError(msg.str());
  }
  if (spectrum.mixed()) {
    return CriticalNature::Saddle;
  }
  if (spectrum.n_zero > 0) {
    return CriticalNature::Degenerate;
  }
  constexpr double kValueTol = 1e-9;
  const double value = fidelity(a, s);
  if (spectrum.n_neg > 0) {
    return std::abs(value - global_max) <= kValueTol ? CriticalNature::GlobalMax
                                                     : CriticalNature::LocalMaxNotGlobal;
  }
  return std::abs(value - global_min) <= kValueTol ? CriticalNature::GlobalMin
                                                   : CriticalNature::LocalMinNotGlobal;
}

}  // namespace sunland
