#include "sunland/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sunland/errors.hpp"

namespace sunland {

namespace {

constexpr double kMinStep = 1e-16;
constexpr double kDriftTol = 1e-10;

double feasibility_error(const ComplexMatrix& s) {
  return std::max(unitarity_residual(s), std::abs(determinant(s) - 1.0));
}

// Re tr(A^dagger E S)
double fidelity_change(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& s) {
  return a.conjugate().cwiseProduct(e * s).sum().real();
}

}  // namespace

void OptimizerConfig::validate() const {
  std::ostringstream msg;
  if (!(shrink > 0.0 && shrink < 1.0)) {
    msg << "shrink must lie in (0, 1), got " << shrink;
  } else if (!(armijo_c1 > 0.0 && armijo_c1 < 1.0)) {
    msg << "armijo_c1 must lie in (0, 1), got " << armijo_c1;
  } else if (!(init_step > 0.0)) {
    msg << "init_step must be positive, got " << init_step;
  } else if (!(grad_tol >= 0.0)) {
    msg << "grad_tol must be non-negative, got " << grad_tol;
  } else if (max_iters < 0) {
    msg << "max_iters must be non-negative, got " << max_iters;
  } else {
    return;
  }
  throw PreconditionError("OptimizerConfig: " + msg.str());
}

OptimizeTrace run(const TargetGate& a, const SpecialUnitaryPoint& start,
                  const OptimizerConfig& config) {
  config.validate();
  if (!a.su_mode()) {
    throw PreconditionError("optimizer: target gate must be in SU(N)");
  }
  if (a.dim() != start.dim()) {
    throw DimensionError("optimizer: target and start have different dimensions");
  }
  const double sign = config.mode == OptimizeMode::Maximize ? 1.0 : -1.0;
  const ComplexMatrix& am = a.matrix();

  OptimizeTrace trace{{}, start, false, Termination::MaxIterations, std::nullopt, 0.0};
  ComplexMatrix s = start.matrix();
  trace.max_feasibility_error = feasibility_error(s);

  for (int k = 0;; ++k) {
    const SpecialUnitaryPoint current(s);
    const TangentDirection grad = sun_fidelity_direction(a, current);
    const double grad_sq = metric(grad, grad);
    const double grad_norm = std::sqrt(grad_sq);
    IterateRecord record{k, fidelity(a, current), grad_norm, 0.0, 0.0};

    if (grad_norm <= config.grad_tol) {
      trace.iterates.push_back(record);
      trace.converged = true;
      trace.termination = Termination::Converged;
      break;
    }
    if (k >= config.max_iters) {
      trace.iterates.push_back(record);
      trace.termination = Termination::MaxIterations;
      break;
    }

    const ComplexMatrix direction = sign * grad.omega();
    double tau = config.init_step;
    ComplexMatrix step_minus_identity;
    bool accepted = false;
    while (tau >= kMinStep) {
      step_minus_identity = expm1_skew(tau * direction);
      const double change = fidelity_change(am, step_minus_identity, s);
      if (sign * change >= config.armijo_c1 * tau * grad_sq) {
        record.step = tau;
        record.increase = change;
        accepted = true;
        break;
      }
      tau *= config.shrink;
    }
    trace.iterates.push_back(record);
    if (!accepted) {
      trace.termination = Termination::LineSearchFailure;
      break;
    }

    s = (s + step_minus_identity * s).eval();
    const double drift = feasibility_error(s);
    trace.max_feasibility_error = std::max(trace.max_feasibility_error, drift);
    if (drift > kDriftTol) {
      s = nearest_special_unitary(s).matrix();
    }
  }

  trace.final_point = SpecialUnitaryPoint(s);
  if (trace.converged) {
    const SpecialUnitaryPoint reduced(am.adjoint() * s);
    try {
      trace.matched_family = match(reduced, enumerate(static_cast<int>(a.dim())), kMatchTol);
    } catch (const NotCriticalError&) {
      trace.matched_family.reset();
    } catch (const AmbiguousMatchError&) {
      trace.matched_family.reset();
    }
  }
  return trace;
}

std::uint64_t start_seed(std::uint64_t base, int index) noexcept {
  // splitmix64 finalizer over (base, index)
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<OptimizeTrace> run_multistart(const TargetGate& a, int starts,
                                          const OptimizerConfig& config) {
  if (starts < 0) {
    throw PreconditionError("run_multistart: starts must be non-negative");
  }
  std::vector<OptimizeTrace> traces;
  traces.reserve(static_cast<std::size_t>(starts));
  for (int i = 0; i < starts; ++i) {
    const SpecialUnitaryPoint start =
        random_special_unitary(a.dim(), start_seed(config.seed, i));
    traces.push_back(run(a, start, config));
  }
  return traces;
}

}  // namespace sunland
