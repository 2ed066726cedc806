#pragma once

// Closed-form enumeration of the critical points of the reduced cost
// Re tr(S) on SU(N). Every critical point is conjugate to
//
//   S_{k,mu}(U) = U^dagger (D_{k,mu} - (mu i / 2) I) U,
//   D_{k,mu}    = sqrt(1 - mu^2/4) diag(1 (k times), -1 (N - k times)),
//
// where z = sqrt(1 - mu^2/4) + (mu/2) i solves z^{N-2k} = (-1)^{N-k} with
// Re z >= 0. The value of the cost there is sqrt(1 - mu^2/4) (2k - N).
// A target A in SU(N) reduces to this case through S -> A^dagger S.

#include <optional>
#include <vector>

#include "sunland/fidelity_landscape.hpp"
#include "sunland/matrix.hpp"
#include "sunland/sun_geometry.hpp"

namespace sunland {

struct CriticalFamily {
  int n = 0;
  int kplus = 0;  ///< multiplicity of the +sqrt(1 - mu^2/4) block
  double mu = 0.0;
  double value = 0.0;
  CriticalNature nature = CriticalNature::Saddle;
  /// True only for N = 4M, kplus = 2M, where every mu in [-2, 2] is critical.
  /// The stored mu / z / value then describe the mu = 0 member.
  bool is_continuum = false;
  Complex z{1.0, 0.0};
};

struct CatalogEntryPoint {
  CriticalFamily family;  ///< for continuum families, carries the concrete mu
  UnitaryPoint conjugator;
  SpecialUnitaryPoint s;
};

/// All critical families of Re tr(S) on SU(n), ordered by kplus then mu.
/// Throws PreconditionError for n < 2.
std::vector<CriticalFamily> enumerate(int n);

/// The families that are local but not global extrema. Empty iff the
/// landscape on SU(n) is trap free.
std::vector<CriticalFamily> trap_report(int n);

/// Largest / smallest critical value over a catalog.
double catalog_global_max(const std::vector<CriticalFamily>& catalog);
double catalog_global_min(const std::vector<CriticalFamily>& catalog);

/// Member of a continuum family at a specific mu in [-2, 2].
CriticalFamily continuum_member(const CriticalFamily& family, double mu);

/// K evenly spaced members of a continuum family over mu in [-2, 2]
/// (endpoints included for K >= 2, mu = 0 for K = 1).
std::vector<CriticalFamily> sample_continuum(const CriticalFamily& family, int k);

/// True when sqrt(1 - mu^2/4) = 0: the point is -+ i I and its Hessian is
/// identically zero, so the spectrum alone cannot classify it.
bool hessian_vanishes(const CriticalFamily& family) noexcept;

/// Builds S_{kplus,mu}(u). Continuum families require `mu`; it is ignored
/// otherwise. Throws InvariantError when the result fails the SU(N) or
/// criticality checks (residual 1e-10).
CatalogEntryPoint materialize(const CriticalFamily& family, const UnitaryPoint& u,
                              std::optional<double> mu = std::nullopt);

/// Identifies the family of a critical point of Re tr(S) from its spectrum.
/// Throws NotCriticalError when the criticality residual exceeds tol and
/// AmbiguousMatchError when the eigenvalues do not form the expected
/// two-point cluster. Returns nullopt when no catalog family fits.
/// For the points -+ i I, which belong to every kplus, the lowest kplus wins.
std::optional<CriticalFamily> match(const SpecialUnitaryPoint& s,
                                    const std::vector<CriticalFamily>& catalog, double tol);

}  // namespace sunland
