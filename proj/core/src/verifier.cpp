#include "sunland/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "sunland/errors.hpp"

namespace sunland::verify {

namespace {

constexpr double kNearZero = 1e-8;
constexpr double kGradientStep = 1e-5;
constexpr double kHessianStep = 1e-4;
constexpr double kGradientTol = 1e-6;
constexpr double kHessianRelTol = 1e-4;
constexpr double kHessianAbsTol = 1e-6;
constexpr double kProbeRadius = 0.1;
constexpr int kProbeSamples = 2000;

// f(exp(W) s) - f(s) = Re tr(A^dagger (exp(W) - I) S), evaluated without
// subtracting two O(N) numbers.
double fidelity_delta(const TargetGate& a, const SpecialUnitaryPoint& s, const ComplexMatrix& w) {
  return a.matrix().conjugate().cwiseProduct(expm1_skew(w) * s.matrix()).sum().real();
}

FdCheck make_check(double analytic, double numeric) {
  FdCheck check;
  check.analytic = analytic;
  check.numeric = numeric;
  check.abs_error = std::abs(numeric - analytic);
  check.rel_error = analytic != 0.0 ? check.abs_error / std::abs(analytic)
                                    : std::numeric_limits<double>::infinity();
  check.absolute = std::abs(analytic) < kNearZero;
  check.error = check.absolute ? check.abs_error : check.rel_error;
  return check;
}

void require_step(double h, double lo, double hi, const char* what) {
  if (!(h >= lo && h <= hi)) {
    std::ostringstream msg;
    msg << what << ": step " << h << " outside [" << lo << ", " << hi << "]";
    throw PreconditionError(msg.str());
  }
}

std::string format_details(const std::string& body) { return body; }

template <class... Args>
std::string describe(Args&&... args) {
  std::ostringstream out;
  out << std::setprecision(6);
  (out << ... << args);
  return format_details(out.str());
}

// Conjugators for materialization; U(N) Haar samples.
UnitaryPoint random_conjugator(int n, std::mt19937_64& rng) { return random_unitary(n, rng); }

// Points of a family to test: continuum families are sampled over mu.
std::vector<CriticalFamily> members_of(const CriticalFamily& family) {
  if (!family.is_continuum) {
    return {family};
  }
  return sample_continuum(family, 5);
}

}  // namespace

std::string_view to_string(ProbeVerdict verdict) noexcept {
  switch (verdict) {
    case ProbeVerdict::Saddle:
      return "Saddle";
    case ProbeVerdict::LocalMax:
      return "LocalMax";
    case ProbeVerdict::LocalMin:
      return "LocalMin";
    case ProbeVerdict::Flat:
      return "Flat";
  }
  return "Unknown";
}

FdCheck fd_gradient_check(const TargetGate& a, const SpecialUnitaryPoint& s,
                          const TangentDirection& dir, double h) {
  require_step(h, 1e-7, 1e-3, "fd_gradient_check");
  if (!dir.is_traceless()) {
    throw PreconditionError("fd_gradient_check: direction must be traceless (tangent to SU(N))");
  }
  const ComplexMatrix grad = sun_fidelity_gradient(a, s);
  const double analytic = ambient_inner(grad, dir.omega() * s.matrix());
  const ComplexMatrix& w = dir.omega();
  const double numeric = (fidelity_delta(a, s, h * w) - fidelity_delta(a, s, -h * w)) / (2.0 * h);
  return make_check(analytic, numeric);
}

FdCheck fd_hessian_check(const TargetGate& a, const SpecialUnitaryPoint& s,
                         const TangentDirection& dir, double h) {
  require_step(h, 1e-4, 1e-2, "fd_hessian_check");
  const CriticalityResidual crit = criticality_residual(a, s);
  if (crit.residual > kCriticalTol) {
    std::ostringstream msg;
    msg << "fd_hessian_check: point is not critical (residual " << crit.residual << ")";
    throw NotCriticalError(msg.str());
  }
  const double analytic = hessian_quadratic(a, s, dir);
  const ComplexMatrix& w = dir.omega();
  const double numeric = (fidelity_delta(a, s, h * w) + fidelity_delta(a, s, -h * w)) / (h * h);
  return make_check(analytic, numeric);
}

SaddleProbe saddle_probe(const TargetGate& a, const SpecialUnitaryPoint& s, double radius,
                         int samples, std::uint64_t seed) {
  if (!(radius > 0.0)) {
    throw PreconditionError("saddle_probe: radius must be positive");
  }
  if (samples < 100) {
    throw PreconditionError("saddle_probe: at least 100 samples are required");
  }
  if (a.dim() != s.dim()) {
    throw DimensionError("saddle_probe: target and point have different dimensions");
  }
  const SuNBasis basis = sun_basis(s.dim());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SaddleProbe probe;
  probe.epsilon = 1e-12 * static_cast<double>(s.dim());
  probe.min_delta = std::numeric_limits<double>::infinity();
  probe.max_delta = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double r = radius * (1.0 - unit(rng));  // (0, radius]
    const TangentDirection dir = random_su_direction(basis, rng, r);
    const double delta = fidelity_delta(a, s, dir.omega());
    probe.min_delta = std::min(probe.min_delta, delta);
    probe.max_delta = std::max(probe.max_delta, delta);
  }
  const bool below = probe.min_delta < -probe.epsilon;
  const bool above = probe.max_delta > probe.epsilon;
  if (below && above) {
    probe.verdict = ProbeVerdict::Saddle;
  } else if (below) {
    probe.verdict = ProbeVerdict::LocalMax;
  } else if (above) {
    probe.verdict = ProbeVerdict::LocalMin;
  } else {
    probe.verdict = ProbeVerdict::Flat;
  }
  return probe;
}

bool all_passed(const Report& report) noexcept {
  return std::all_of(report.begin(), report.end(),
                     [](const ReportEntry& e) { return e.passed; });
}

Report trap_boundary_test(const std::vector<int>& n_range, std::uint64_t seed) {
  Report report;
  std::mt19937_64 rng(seed);
  for (const int n : n_range) {
    const auto traps = trap_report(n);
    const bool expect_traps = n >= 5;
    {
      std::ostringstream values;
      values << std::setprecision(17);
      for (const auto& t : traps) {
        values << " " << to_string(t.nature) << "@" << t.value;
      }
      report.push_back({"trap_boundary", n, traps.empty() != expect_traps,
                        describe(traps.size(), " trap families (expected ",
                                 expect_traps ? "some" : "none", ")", values.str())});
    }

    const SuNBasis basis = sun_basis(n);
    const TargetGate identity = TargetGate::identity(n);
    for (const auto& trap : traps) {
      const CatalogEntryPoint point = materialize(trap, random_conjugator(n, rng));
      const HessianSpectrum spectrum = hessian_matrix(identity, point.s, basis);
      const bool is_max = trap.nature == CriticalNature::LocalMaxNotGlobal;
      const bool definite = is_max ? spectrum.n_neg == basis.size() : spectrum.n_pos == basis.size();
      const SaddleProbe probe = saddle_probe(identity, point.s, kProbeRadius, kProbeSamples, rng());
      const bool one_sided = probe.verdict == (is_max ? ProbeVerdict::LocalMax : ProbeVerdict::LocalMin);
      report.push_back(
          {"trap_crosscheck", n, definite && one_sided,
           describe(to_string(trap.nature), " kplus=", trap.kplus, " mu=", trap.mu, " value=",
                    trap.value, " n_pos=", spectrum.n_pos, " n_neg=", spectrum.n_neg,
                    " n_zero=", spectrum.n_zero, " probe=", to_string(probe.verdict),
                    " [", probe.min_delta, ", ", probe.max_delta, "]")});
    }
  }
  return report;
}

Report gradient_suite(int n_max, int samples_per_n, std::uint64_t seed) {
  Report report;
  std::mt19937_64 rng(seed);
  for (int n = 2; n <= n_max; ++n) {
    const SuNBasis basis = sun_basis(n);
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < samples_per_n; ++i) {
      const TargetGate a(random_special_unitary(n, rng).matrix());
      const SpecialUnitaryPoint s = random_special_unitary(n, rng);
      const TangentDirection dir = random_su_direction(basis, rng);
      const FdCheck check = fd_gradient_check(a, s, dir, kGradientStep);
      worst = std::max(worst, check.error);
      if (!(check.error < kGradientTol)) {
        ++failures;
      }
    }
    report.push_back({"fd_gradient", n, failures == 0,
                      describe("max error ", worst, " over ", samples_per_n, " samples, ",
                               failures, " above ", kGradientTol)});
  }
  return report;
}

Report hessian_suite(int n_max, int directions, std::uint64_t seed) {
  Report report;
  std::mt19937_64 rng(seed);
  for (int n = 2; n <= n_max; ++n) {
    const SuNBasis basis = sun_basis(n);
    double worst_rel = 0.0;
    double worst_abs = 0.0;
    int checks = 0;
    int failures = 0;
    for (const auto& family : enumerate(n)) {
      for (const auto& member : members_of(family)) {
        const CatalogEntryPoint point =
            materialize(member, random_conjugator(n, rng), member.mu);
        // Left translation by a random SU(N) target keeps criticality and nature.
        const SpecialUnitaryPoint target = random_special_unitary(n, rng);
        const TargetGate a(target.matrix());
        const SpecialUnitaryPoint s(target.matrix() * point.s.matrix());
        for (int d = 0; d < directions; ++d) {
          const TangentDirection dir = random_su_direction(basis, rng);
          const FdCheck check = fd_hessian_check(a, s, dir, kHessianStep);
          ++checks;
          const bool ok =
              check.absolute ? check.abs_error < kHessianAbsTol : check.rel_error < kHessianRelTol;
          if (check.absolute) {
            worst_abs = std::max(worst_abs, check.abs_error);
          } else {
            worst_rel = std::max(worst_rel, check.rel_error);
          }
          if (!ok) {
            ++failures;
          }
        }
      }
    }
    report.push_back({"fd_hessian", n, failures == 0,
                      describe(checks, " checks, max rel error ", worst_rel,
                               ", max abs error (near zero) ", worst_abs, ", ", failures,
                               " failures")});
  }
  return report;
}

Report catalog_suite(int n_max, int conjugators, std::uint64_t seed) {
  Report report;
  std::mt19937_64 rng(seed);
  for (int n = 2; n <= n_max; ++n) {
    const SuNBasis basis = sun_basis(n);
    const TargetGate identity = TargetGate::identity(n);
    const auto catalog = enumerate(n);
    const double gmax = catalog_global_max(catalog);
    const double gmin = catalog_global_min(catalog);
    int checked = 0;
    int probed = 0;
    std::vector<std::string> mismatches;
    for (const auto& family : catalog) {
      for (const auto& member : members_of(family)) {
        const bool vanishing = hessian_vanishes(member);
        for (int c = 0; c < conjugators; ++c) {
          const CatalogEntryPoint point =
              materialize(member, random_conjugator(n, rng), member.mu);
          const HessianSpectrum spectrum = hessian_matrix(identity, point.s, basis);
          const CriticalNature nature = classify(identity, point.s, spectrum, gmax, gmin);
          ++checked;
          if (vanishing) {
            if (nature != CriticalNature::Degenerate) {
              mismatches.push_back(describe("kplus=", member.kplus, " mu=", member.mu,
                                            " expected Degenerate spectrum, got ",
                                            to_string(nature)));
            }
            // -+ i I does not depend on the conjugator; one probe suffices.
            if (c == 0) {
              const SaddleProbe probe =
                  saddle_probe(identity, point.s, kProbeRadius, kProbeSamples, rng());
              ++probed;
              if (probe.verdict != ProbeVerdict::Saddle ||
                  member.nature != CriticalNature::Saddle) {
                mismatches.push_back(describe("kplus=", member.kplus, " mu=", member.mu,
                                              " probe verdict ", to_string(probe.verdict)));
              }
            }
          } else if (nature != member.nature) {
            mismatches.push_back(describe("kplus=", member.kplus, " mu=", member.mu,
                                          " catalog ", to_string(member.nature), " vs Hessian ",
                                          to_string(nature)));
          }
        }
      }
    }
    std::ostringstream details;
    details << checked << " materialized points, " << probed << " saddle probes";
    for (const auto& m : mismatches) {
      details << "; " << m;
    }
    report.push_back({"classification", n, mismatches.empty(), details.str()});
  }
  return report;
}

Report run_suite(std::string_view name, int n_max, std::uint64_t seed) {
  if (n_max < 2) {
    throw PreconditionError("run_suite: n_max must be at least 2");
  }
  std::vector<int> n_range;
  for (int n = 2; n <= n_max; ++n) {
    n_range.push_back(n);
  }
  const bool all = name == "all";
  if (!all && name != "gradient" && name != "hessian" && name != "catalog" && name != "traps") {
    throw PreconditionError("unknown verification suite '" + std::string(name) + "'");
  }
  Report report;
  auto append = [&report](Report part) {
    report.insert(report.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  };
  if (all || name == "gradient") {
    append(gradient_suite(n_max, 100, seed + 11));
  }
  if (all || name == "hessian") {
    append(hessian_suite(n_max, 20, seed + 13));
  }
  if (all || name == "catalog") {
    append(catalog_suite(n_max, 10, seed + 17));
  }
  if (all || name == "traps") {
    append(trap_boundary_test(n_range, seed + 7));
  }
  return report;
}

}  // namespace sunland::verify
