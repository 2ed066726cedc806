#pragma once

// Geodesic gradient ascent / descent of the trace fidelity on SU(N):
//
//   S_{k+1} = exp(+-tau_k Omega_k) S_k,   Omega_k S_k = Riemannian gradient at S_k,
//
// with Armijo backtracking on tau_k. Converged runs are identified against the
// critical-point catalog after the reduction S -> A^dagger S.

#include <cstdint>
#include <optional>
#include <vector>

#include "sunland/critical_catalog.hpp"
#include "sunland/fidelity_landscape.hpp"
#include "sunland/sun_geometry.hpp"

namespace sunland {

enum class OptimizeMode { Maximize, Minimize };

struct OptimizerConfig {
  OptimizeMode mode = OptimizeMode::Maximize;
  int max_iters = 5000;
  double grad_tol = 1e-9;  ///< on the metric norm of the Riemannian gradient
  double armijo_c1 = 1e-4;
  double shrink = 0.5;
  double init_step = 1.0;
  std::uint64_t seed = 0;  ///< seeds random starts in run_multistart

  /// Throws PreconditionError on out-of-range parameters.
  void validate() const;
};

enum class Termination { Converged, MaxIterations, LineSearchFailure };

struct IterateRecord {
  int iteration = 0;
  double value = 0.0;      ///< fidelity at S_k
  double grad_norm = 0.0;  ///< metric norm of the gradient at S_k
  double step = 0.0;       ///< accepted tau_k (0 for the last record)
  double increase = 0.0;   ///< f(S_{k+1}) - f(S_k), computed without cancellation
};

struct OptimizeTrace {
  std::vector<IterateRecord> iterates;
  SpecialUnitaryPoint final_point;
  bool converged = false;
  Termination termination = Termination::MaxIterations;
  std::optional<CriticalFamily> matched_family;
  /// Largest deviation from SU(N) seen over all iterates (max of the unitarity
  /// residual and |det - 1|).
  double max_feasibility_error = 0.0;

  int iterations() const noexcept {
    return iterates.empty() ? 0 : static_cast<int>(iterates.size()) - 1;
  }
};

/// Tolerance used to match a converged point against the catalog.
inline constexpr double kMatchTol = 1e-6;

/// Runs one geodesic gradient flow. Requires an SU(N) target.
/// A run that exhausts max_iters or whose line search underflows (tau < 1e-16)
/// returns converged = false with the corresponding termination reason.
OptimizeTrace run(const TargetGate& a, const SpecialUnitaryPoint& start,
                  const OptimizerConfig& config);

/// Deterministic seed for start `index` derived from config.seed.
std::uint64_t start_seed(std::uint64_t base, int index) noexcept;

/// `starts` independent runs from random_special_unitary(n, start_seed(config.seed, i)),
/// returned in start order.
std::vector<OptimizeTrace> run_multistart(const TargetGate& a, int starts,
                                          const OptimizerConfig& config);

}  // namespace sunland
