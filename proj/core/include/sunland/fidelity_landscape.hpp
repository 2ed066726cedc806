#pragma once

// Trace fidelity G(U) = Re tr(A^dagger U) on U(N) and its restriction to SU(N):
// gradients, the criticality equation A S^dagger - S A^dagger = mu i I, Hessian
// quadratic forms along geodesics, and spectral classification of critical points.
// The 1/N normalization is dropped, so values lie in [-N, N].

#include <optional>
#include <string_view>

#include "sunland/matrix.hpp"
#include "sunland/sun_geometry.hpp"

namespace sunland {

class TargetGate {
 public:
  /// Throws InvariantError unless `a` is unitary within 1e-8.
  explicit TargetGate(ComplexMatrix a);

  static TargetGate identity(Eigen::Index n);

  const ComplexMatrix& matrix() const noexcept { return a_; }
  Eigen::Index dim() const noexcept { return a_.rows(); }
  /// True when additionally |det a - 1| <= 1e-8.
  bool su_mode() const noexcept { return su_mode_; }

 private:
  ComplexMatrix a_;
  bool su_mode_ = false;
};

enum class CriticalNature {
  GlobalMax,
  GlobalMin,
  LocalMaxNotGlobal,
  LocalMinNotGlobal,
  Saddle,
  Degenerate,
};

std::string_view to_string(CriticalNature nature) noexcept;
std::optional<CriticalNature> parse_nature(std::string_view name) noexcept;

struct CriticalityResidual {
  double mu_hat = 0.0;
  double residual = 0.0;
};

struct HessianSpectrum {
  RealVector eigenvalues;  ///< ascending
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  double zero_threshold = 0.0;

  bool mixed() const noexcept { return n_pos > 0 && n_neg > 0; }
};

/// Re tr(a^dagger u).
double fidelity(const TargetGate& a, const UnitaryPoint& u);

/// (A U^dagger - U A^dagger) U.
ComplexMatrix ambient_gradient(const TargetGate& a, const UnitaryPoint& u);

/// (A S^dagger - S A^dagger - (1/N) tr(A S^dagger - S A^dagger) I) S.
/// Throws PreconditionError unless the target is in SU(N).
ComplexMatrix sun_fidelity_gradient(const TargetGate& a, const SpecialUnitaryPoint& s);

/// The traceless skew-Hermitian Omega with sun_fidelity_gradient = Omega S.
TangentDirection sun_fidelity_direction(const TargetGate& a, const SpecialUnitaryPoint& s);

/// mu_hat = Re tr(-i (A S^dagger - S A^dagger)) / N and
/// residual = ||A S^dagger - S A^dagger - mu_hat i I||_F.
CriticalityResidual criticality_residual(const TargetGate& a, const SpecialUnitaryPoint& s);

/// 1/2 tr(Omega^2 (S A^dagger + A S^dagger)), the second derivative of the
/// fidelity along exp(t Omega) S. Requires a traceless direction.
double hessian_quadratic(const TargetGate& a, const SpecialUnitaryPoint& s,
                         const TangentDirection& dir);

/// Polarized form 1/4 tr((Omega_1 Omega_2 + Omega_2 Omega_1)(S A^dagger + A S^dagger)).
double hessian_bilinear(const TargetGate& a, const SpecialUnitaryPoint& s,
                        const TangentDirection& d1, const TangentDirection& d2);

/// Hessian matrix in an orthonormal su(N) basis; symmetric (N^2-1) x (N^2-1).
RealMatrix hessian_form_matrix(const TargetGate& a, const SpecialUnitaryPoint& s,
                               const SuNBasis& basis);

/// Eigenvalues of hessian_form_matrix with sign counts under the zero
/// threshold 1e-9 max(1, max |eigenvalue|).
HessianSpectrum hessian_matrix(const TargetGate& a, const SpecialUnitaryPoint& s,
                               const SuNBasis& basis);

/// Sign counts of an arbitrary symmetric spectrum under the same threshold rule.
HessianSpectrum classify_spectrum(RealVector eigenvalues);

/// Maximum criticality residual accepted by classify().
inline constexpr double kCriticalTol = 1e-8;

/// Nature of a critical point from its Hessian spectrum:
/// mixed signs give Saddle; a zero eigenvalue without mixed signs gives
/// Degenerate; definite spectra give extrema, tagged global by comparing the
/// fidelity with global_max / global_min within 1e-9.
/// Throws NotCriticalError when the residual exceeds 1e-8 and
/// PreconditionError for targets outside SU(N).
CriticalNature classify(const TargetGate& a, const SpecialUnitaryPoint& s,
                        const HessianSpectrum& spectrum, double global_max, double global_min);

}  // namespace sunland
