#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sunland/critical_catalog.hpp"
#include "sunland/errors.hpp"
#include "sunland/fidelity_landscape.hpp"
#include "sunland/io.hpp"
#include "sunland/optimizer.hpp"
#include "sunland/verifier.hpp"

namespace sunland::cli {

namespace {

using io::format_real;

constexpr double kProbeRadius = 0.1;
constexpr int kProbeSamples = 2000;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    throw ParseError("cannot write '" + path + "'");
  }
}

std::string family_label(const CriticalFamily& f) {
  return "(kplus=" + std::to_string(f.kplus) + ", mu=" + format_real(f.mu) + ")";
}

void print_families(std::ostream& out, const std::vector<CriticalFamily>& families) {
  out << std::left << std::setw(7) << "kplus" << std::setw(26) << "mu" << std::setw(26)
      << "value" << std::setw(19) << "nature"
      << "continuum\n";
  for (const auto& f : families) {
    out << std::setw(7) << f.kplus << std::setw(26) << format_real(f.mu) << std::setw(26)
        << format_real(f.value) << std::setw(19) << to_string(f.nature)
        << (f.is_continuum ? "yes" : "no") << "\n";
  }
  out << std::right;
}

// The catalog with every continuum entry replaced by `grid` sampled members.
std::vector<CriticalFamily> expand_continuum(const std::vector<CriticalFamily>& catalog, int grid) {
  if (grid <= 0) {
    return catalog;
  }
  std::vector<CriticalFamily> out;
  for (const auto& f : catalog) {
    if (f.is_continuum) {
      const auto samples = sample_continuum(f, grid);
      out.insert(out.end(), samples.begin(), samples.end());
    } else {
      out.push_back(f);
    }
  }
  return out;
}

struct CatalogArgs {
  int n = 0;
  std::string json;
  int mu_grid = 0;
};

int run_catalog(const CatalogArgs& args, std::ostream& out) {
  const auto families = expand_continuum(enumerate(args.n), args.mu_grid);
  out << "critical families of Re tr(S) on SU(" << args.n << "): " << families.size() << "\n";
  print_families(out, families);
  if (!args.json.empty()) {
    write_text(args.json, io::catalog_to_json(families));
  }
  return 0;
}

struct TrapArgs {
  int n = 0;
  std::string json;
};

int run_trap_report(const TrapArgs& args, std::ostream& out) {
  const auto traps = trap_report(args.n);
  if (traps.empty()) {
    out << "SU(" << args.n << ") is trap free\n";
  } else {
    out << "SU(" << args.n << ") has " << traps.size() << " trap families\n";
    print_families(out, traps);
  }
  if (!args.json.empty()) {
    write_text(args.json, io::catalog_to_json(traps));
  }
  return 0;
}

struct ClassifyArgs {
  int n = 0;
  std::string target;
  std::string point;
  std::uint64_t seed = 0;
};

int run_classify(const ClassifyArgs& args, std::ostream& out) {
  const TargetGate a(io::load_unitary(args.target, args.n).matrix());
  const SpecialUnitaryPoint s = io::load_special_unitary(args.point, args.n);
  const CriticalityResidual crit = criticality_residual(a, s);
  out << "residual " << format_real(crit.residual) << "\n";
  out << "mu_hat " << format_real(crit.mu_hat) << "\n";
  out << "value " << format_real(fidelity(a, s)) << "\n";

  const auto catalog = enumerate(args.n);
  const HessianSpectrum spectrum = hessian_matrix(a, s, sun_basis(args.n));
  out << "hessian n_pos " << spectrum.n_pos << " n_neg " << spectrum.n_neg << " n_zero "
      << spectrum.n_zero << "\n";
  const CriticalNature nature =
      classify(a, s, spectrum, catalog_global_max(catalog), catalog_global_min(catalog));
  out << "nature " << to_string(nature) << "\n";
  if (nature == CriticalNature::Degenerate) {
    const verify::SaddleProbe probe =
        verify::saddle_probe(a, s, kProbeRadius, kProbeSamples, args.seed);
    out << "probe " << verify::to_string(probe.verdict) << " (numerical evidence) min_delta "
        << format_real(probe.min_delta) << " max_delta " << format_real(probe.max_delta) << "\n";
  }
  const SpecialUnitaryPoint reduced(a.matrix().adjoint() * s.matrix());
  try {
    const auto family = match(reduced, catalog, kMatchTol);
    out << "family " << (family ? family_label(*family) : std::string("none")) << "\n";
  } catch (const AmbiguousMatchError& e) {
    out << "family ambiguous: " << e.what() << "\n";
  }
  return 0;
}

struct OptimizeArgs {
  int n = 0;
  std::string target;
  std::string mode;
  int starts = 1;
  std::uint64_t seed = 0;
  std::string trace;
  int max_iters = OptimizerConfig{}.max_iters;
  double grad_tol = OptimizerConfig{}.grad_tol;
};

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::Converged:
      return "converged";
    case Termination::MaxIterations:
      return "max-iters";
    case Termination::LineSearchFailure:
      return "line-search";
  }
  return "unknown";
}

int run_optimize(const OptimizeArgs& args, std::ostream& out) {
  const TargetGate a = args.target.empty()
                           ? TargetGate::identity(args.n)
                           : TargetGate(io::load_special_unitary(args.target, args.n).matrix());
  OptimizerConfig config;
  config.mode = args.mode == "max" ? OptimizeMode::Maximize : OptimizeMode::Minimize;
  config.seed = args.seed;
  config.max_iters = args.max_iters;
  config.grad_tol = args.grad_tol;
  const auto traces = run_multistart(a, args.starts, config);

  std::optional<std::ofstream> trace_file;
  if (!args.trace.empty()) {
    trace_file.emplace(args.trace, std::ios::binary | std::ios::trunc);
    if (!*trace_file) {
      throw ParseError("cannot write '" + args.trace + "'");
    }
  }

  out << std::left << std::setw(7) << "start" << std::setw(13) << "status" << std::setw(7)
      << "iters" << std::setw(26) << "final value" << std::setw(26) << "grad norm"
      << "family\n";
  int converged = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const OptimizeTrace& t = traces[i];
    converged += t.converged ? 1 : 0;
    const IterateRecord& last = t.iterates.back();
    std::string family = "none";
    if (t.matched_family) {
      family = family_label(*t.matched_family) + " " +
               std::string(to_string(t.matched_family->nature));
    }
    out << std::setw(7) << i << std::setw(13) << termination_name(t.termination) << std::setw(7)
        << t.iterations() << std::setw(26) << format_real(last.value) << std::setw(26)
        << format_real(last.grad_norm) << family << "\n";
    if (trace_file) {
      io::write_trace_jsonl(*trace_file, t, args.starts > 1 ? static_cast<int>(i) : -1);
    }
  }
  out << std::right << converged << "/" << traces.size() << " runs converged\n";
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  int n_max = 6;
  std::uint64_t seed = 0;
  std::string json;
};

int run_verify(const VerifyArgs& args, std::ostream& out) {
  const verify::Report report = verify::run_suite(args.suite, args.n_max, args.seed);
  int failed = 0;
  for (const auto& e : report) {
    failed += e.passed ? 0 : 1;
    out << (e.passed ? "PASS " : "FAIL ") << e.test << " n=" << e.n << ": " << e.details << "\n";
  }
  out << report.size() - static_cast<std::size_t>(failed) << "/" << report.size()
      << " checks passed\n";
  if (!args.json.empty()) {
    write_text(args.json, io::report_to_json(report));
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical points and gradient flows of the trace fidelity on SU(N)", "sunland"};
  app.require_subcommand(1);

  CatalogArgs catalog;
  auto* catalog_cmd = app.add_subcommand("catalog", "Enumerate the critical families");
  catalog_cmd->add_option("--n", catalog.n, "Matrix dimension")->required()->check(CLI::Range(2, 64));
  catalog_cmd->add_option("--json", catalog.json, "Write the catalog as JSON to PATH");
  catalog_cmd->add_option("--mu-grid", catalog.mu_grid, "Sample the continuum family at K values of mu")
      ->check(CLI::Range(1, 100000));

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a critical point by its Hessian");
  classify_cmd->add_option("--n", classify_args.n, "Matrix dimension")->required()->check(CLI::Range(2, 64));
  classify_cmd->add_option("--target", classify_args.target, "Target gate matrix file")->required();
  classify_cmd->add_option("--point", classify_args.point, "Point matrix file")->required();
  classify_cmd->add_option("--seed", classify_args.seed, "Seed of the saddle probe");

  OptimizeArgs optimize;
  auto* optimize_cmd = app.add_subcommand("optimize", "Run geodesic gradient flows from random starts");
  optimize_cmd->add_option("--n", optimize.n, "Matrix dimension")->required()->check(CLI::Range(2, 64));
  optimize_cmd->add_option("--target", optimize.target, "Target gate matrix file (default identity)");
  optimize_cmd->add_option("--mode", optimize.mode, "max or min")
      ->required()
      ->check(CLI::IsMember({"max", "min"}));
  optimize_cmd->add_option("--starts", optimize.starts, "Number of random starts")
      ->required()
      ->check(CLI::Range(1, 1000000));
  optimize_cmd->add_option("--seed", optimize.seed, "Base seed of the random starts")->required();
  optimize_cmd->add_option("--trace", optimize.trace, "Write per-iteration JSON lines to PATH");
  optimize_cmd->add_option("--max-iters", optimize.max_iters, "Iteration limit per run")
      ->check(CLI::NonNegativeNumber);
  optimize_cmd->add_option("--grad-tol", optimize.grad_tol, "Gradient norm tolerance")
      ->check(CLI::NonNegativeNumber);

  TrapArgs traps;
  auto* trap_cmd = app.add_subcommand("trap-report", "List local extrema that are not global");
  trap_cmd->add_option("--n", traps.n, "Matrix dimension")->required()->check(CLI::Range(2, 64));
  trap_cmd->add_option("--json", traps.json, "Write the trap families as JSON to PATH");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run the numerical verification suites");
  verify_cmd->add_option("--suite", verify_args.suite, "all, gradient, hessian, catalog or traps")
      ->check(CLI::IsMember({"all", "gradient", "hessian", "catalog", "traps"}));
  verify_cmd->add_option("--n-max", verify_args.n_max, "Largest dimension")->check(CLI::Range(2, 16));
  verify_cmd->add_option("--seed", verify_args.seed, "Seed offset");
  verify_cmd->add_option("--json", verify_args.json, "Write the report as JSON to PATH");

  std::vector<std::string> argv_store{"sunland"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*catalog_cmd) {
      return run_catalog(catalog, out);
    }
    if (*classify_cmd) {
      return run_classify(classify_args, out);
    }
    if (*optimize_cmd) {
      return run_optimize(optimize, out);
    }
    if (*trap_cmd) {
      return run_trap_report(traps, out);
    }
    return run_verify(verify_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sunland::cli
