#pragma once

// Geometry of U(N) and of SU(N) regarded as the level set F_hW^{-1}(0) of
//
//   F_hW(U) = Im(det U) / (Re(det U) + 1),
//
// the determinant composed with the stereographic chart of S^1 projected from
// (-1, 0). Tangent vectors at U are written Omega U with Omega skew-Hermitian;
// the metric is the bi-invariant <Omega_1 U, Omega_2 U> = 1/2 Re tr(Omega_1^dagger Omega_2).

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sunland/embedded_gradient.hpp"
#include "sunland/matrix.hpp"

namespace sunland {

/// Admission tolerance for unitary / special-unitary inputs.
inline constexpr double kAdmissionTol = 1e-8;
/// Tolerance for algebraic identities that hold by construction.
inline constexpr double kAlgebraTol = 1e-10;
/// Points with |det U + 1| below this are rejected by the chart.
inline constexpr double kWestPoleTol = 1e-8;

class UnitaryPoint {
 public:
  /// Throws InvariantError unless ||u^dagger u - I||_F <= 1e-8.
  explicit UnitaryPoint(ComplexMatrix u);

  const ComplexMatrix& matrix() const noexcept { return u_; }
  Eigen::Index dim() const noexcept { return u_.rows(); }

 protected:
  ComplexMatrix u_;
};

class SpecialUnitaryPoint : public UnitaryPoint {
 public:
  /// Throws InvariantError unless the point is unitary and |det s - 1| <= 1e-8.
  explicit SpecialUnitaryPoint(ComplexMatrix s);

  static SpecialUnitaryPoint identity(Eigen::Index n);
};

/// A skew-Hermitian Omega standing for the tangent vector Omega U at any base U.
class TangentDirection {
 public:
  /// Throws PreconditionError unless ||omega + omega^dagger||_F <= 1e-10 max(1, ||omega||_F).
  explicit TangentDirection(ComplexMatrix omega);

  /// As above and additionally requires |tr omega| <= 1e-10 max(1, ||omega||_F).
  static TangentDirection traceless(ComplexMatrix omega);

  const ComplexMatrix& omega() const noexcept { return omega_; }
  bool is_traceless() const noexcept { return traceless_; }
  Eigen::Index dim() const noexcept { return omega_.rows(); }

 private:
  ComplexMatrix omega_;
  bool traceless_ = false;
};

/// Orthonormal basis of su(N) under the bi-invariant metric: generalized
/// Gell-Mann matrices times i, so tr(Omega_a^dagger Omega_b) = 2 delta_ab.
struct SuNBasis {
  Eigen::Index n = 0;
  std::vector<TangentDirection> elements;

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(elements.size()); }
  /// sum_a coeffs(a) Omega_a
  TangentDirection combine(const RealVector& coeffs) const;
  /// Metric coordinates of a traceless direction.
  RealVector coordinates(const TangentDirection& dir) const;
};

/// 1/2 Re tr(a^dagger b) on ambient matrices. For tangent vectors Omega U this
/// equals the metric of the underlying directions, independent of U.
double ambient_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double metric(const TangentDirection& v, const TangentDirection& w);
double metric(const TangentDirection& v, const TangentDirection& w, const UnitaryPoint& base);
double metric_norm(const TangentDirection& v);

/// Im(det u) / (Re(det u) + 1). Throws WestPoleError when |det u + 1| < 1e-8.
double f_hw(const UnitaryPoint& u);

/// d_U F_hW(Omega U) = -2i det U tr(Omega) / (det U + 1)^2, a real number.
/// On SU(N) this reduces to -(i/2) tr Omega.
double f_hw_differential(const UnitaryPoint& u, const TangentDirection& dir);

/// Ambient gradient of F_hW at a unitary point: the unique X with
/// <X, Omega U> = d_U F_hW(Omega U) for every skew-Hermitian Omega.
/// Equals 4 Re(det U / (det U + 1)^2) i U, which is i U on SU(N).
ComplexMatrix grad_f_hw(const UnitaryPoint& u);

/// grad F_hW at a point of SU(N): i s.
ComplexMatrix grad_f_hw(const SpecialUnitaryPoint& s);

/// Hess F_hW(U)(Omega U, Omega U) = 2i det U (tr Omega)^2 (det U - 1) / (det U + 1)^3.
/// Vanishes on SU(N). Throws WestPoleError near det U = -1.
double hess_f_hw_quadratic(const UnitaryPoint& u, const TangentDirection& dir);

/// Riemannian gradient on SU(N) of the restriction of a cost on U(N):
///   grad G(S) - (1/N) tr(S^dagger grad G(S)) S.
/// Throws PreconditionError unless grad_ambient s^dagger is skew-Hermitian
/// within 1e-8 max(1, ||grad_ambient||_F).
ComplexMatrix sun_gradient(const SpecialUnitaryPoint& s, const ComplexMatrix& grad_ambient);

/// The constraint system {F_hW} in the form the embedded-gradient engine takes,
/// with ambient vectors represented as N x N complex matrices.
embedded::ConstraintSystem<ComplexMatrix> sun_constraint_system();

/// exp(t Omega) s. Throws PreconditionError unless dir is traceless.
SpecialUnitaryPoint geodesic_step(const SpecialUnitaryPoint& s, const TangentDirection& dir,
                                  double t);

/// Polar projection of a near-unitary matrix followed by removal of the
/// determinant phase. Used to pull long iterations back onto SU(N).
SpecialUnitaryPoint nearest_special_unitary(const ComplexMatrix& m);

/// Haar-distributed unitary from the QR factorization of a complex Ginibre matrix.
UnitaryPoint random_unitary(Eigen::Index n, std::mt19937_64& rng);

/// Haar unitary with its determinant phase removed by a global factor e^{-i theta/N}.
SpecialUnitaryPoint random_special_unitary(Eigen::Index n, std::uint64_t seed);
SpecialUnitaryPoint random_special_unitary(Eigen::Index n, std::mt19937_64& rng);

/// Random traceless direction with metric norm `norm` (isotropic in su(N)).
TangentDirection random_su_direction(Eigen::Index n, std::mt19937_64& rng, double norm = 1.0);
TangentDirection random_su_direction(const SuNBasis& basis, std::mt19937_64& rng,
                                     double norm = 1.0);

/// Random skew-Hermitian direction in u(N) with a generic trace.
TangentDirection random_u_direction(Eigen::Index n, std::mt19937_64& rng);

/// Throws PreconditionError for n < 2.
SuNBasis sun_basis(Eigen::Index n);

}  // namespace sunland
