#pragma once

// Independent numerical checks of the landscape results: finite-difference
// gradient and Hessian oracles, a function-value saddle probe for critical
// points whose Hessian vanishes, and the trap-free boundary in N.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sunland/critical_catalog.hpp"
#include "sunland/fidelity_landscape.hpp"
#include "sunland/sun_geometry.hpp"

namespace sunland::verify {

struct FdCheck {
  double analytic = 0.0;
  double numeric = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  /// The error measure the check reports: relative, or absolute when the
  /// analytic value is below the near-zero cutoff.
  double error = 0.0;
  bool absolute = false;
};

/// Central difference [f(exp(h W) s) - f(exp(-h W) s)] / 2h against the metric
/// pairing of the SU(N) gradient with W s. Requires a traceless direction and
/// h in [1e-7, 1e-3].
FdCheck fd_gradient_check(const TargetGate& a, const SpecialUnitaryPoint& s,
                          const TangentDirection& dir, double h);

/// Second difference [f(exp(h W) s) - 2 f(s) + f(exp(-h W) s)] / h^2 against
/// hessian_quadratic. Requires s critical (residual <= 1e-8) and h in [1e-4, 1e-2].
/// Reports the absolute error when |hessian_quadratic| < 1e-8.
FdCheck fd_hessian_check(const TargetGate& a, const SpecialUnitaryPoint& s,
                         const TangentDirection& dir, double h);

enum class ProbeVerdict { Saddle, LocalMax, LocalMin, Flat };

std::string_view to_string(ProbeVerdict verdict) noexcept;

struct SaddleProbe {
  double min_delta = 0.0;
  double max_delta = 0.0;
  double epsilon = 0.0;  ///< 1e-12 N
  ProbeVerdict verdict = ProbeVerdict::Flat;
};

/// Samples f(exp(W) s) - f(s) over random traceless W with metric norm uniform
/// in (0, radius]. Saddle when both signs exceed 1e-12 N in magnitude. The
/// verdict is numerical evidence, not a proof.
SaddleProbe saddle_probe(const TargetGate& a, const SpecialUnitaryPoint& s, double radius,
                         int samples, std::uint64_t seed);

struct ReportEntry {
  std::string test;
  int n = 0;
  bool passed = false;
  std::string details;
};

using Report = std::vector<ReportEntry>;

bool all_passed(const Report& report) noexcept;

/// trap_report(n) must be empty for n <= 4 and non-empty for n >= 5; every
/// reported trap is cross-checked by Hessian definiteness and a one-sided probe.
Report trap_boundary_test(const std::vector<int>& n_range, std::uint64_t seed = 7);

/// Random (A, S, W) triples per n in [2, n_max]: FD gradient relative error < 1e-6.
Report gradient_suite(int n_max, int samples_per_n = 100, std::uint64_t seed = 11);

/// Every catalog point for n in [2, n_max] along random directions: FD Hessian
/// relative error < 1e-4 (absolute 1e-6 near zero).
Report hessian_suite(int n_max, int directions = 20, std::uint64_t seed = 13);

/// Spectrum-based nature equals the catalog nature for every non-degenerate
/// family at random conjugators; families with vanishing Hessian are resolved
/// by the saddle probe.
Report catalog_suite(int n_max, int conjugators = 10, std::uint64_t seed = 17);

/// Runs the named suite: "all", "gradient", "hessian", "catalog" or "traps".
/// Throws PreconditionError for an unknown name.
Report run_suite(std::string_view name, int n_max, std::uint64_t seed = 0);

}  // namespace sunland::verify
