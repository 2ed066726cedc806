#include "sunland/critical_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sunland/errors.hpp"

namespace sunland {

namespace {

constexpr double kRootSnap = 1e-15;
constexpr double kValueTie = 1e-12;
constexpr double kMaterializeTol = 1e-10;

// Roots of z^m = sign on the unit circle with Re z >= 0, sorted by Im z.
std::vector<Complex> half_plane_roots(int m, int sign) {
  std::vector<Complex> roots;
  const double offset = sign > 0 ? 0.0 : 1.0;
  for (int j = 0; j < m; ++j) {
    double theta = (2.0 * j + offset) * std::numbers::pi / m;
    if (theta > std::numbers::pi) {
      theta -= 2.0 * std::numbers::pi;
    }
    double re = std::cos(theta);
    double im = std::sin(theta);
    if (std::abs(re) < kRootSnap) {
      re = 0.0;
      im = im > 0.0 ? 1.0 : -1.0;
    }
    if (std::abs(im) < kRootSnap) {
      im = 0.0;
    }
    if (re >= 0.0) {
      roots.emplace_back(re, im);
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const Complex& a, const Complex& b) { return a.imag() < b.imag(); });
  return roots;
}

CriticalFamily make_family(int n, int kplus, Complex z) {
  CriticalFamily f;
  f.n = n;
  f.kplus = kplus;
  f.z = z;
  f.mu = 2.0 * z.imag();
  f.value = z.real() * static_cast<double>(2 * kplus - n);
  if (f.value == 0.0) {
    f.value = 0.0;  // no negative zero in printed catalogs
  }
  return f;
}

double block_scale(double mu) { return std::sqrt(std::max(0.0, 1.0 - 0.25 * mu * mu)); }

}  // namespace

std::vector<CriticalFamily> enumerate(int n) {
  if (n < 2) {
    throw PreconditionError("enumerate: n must be at least 2");
  }
  std::vector<CriticalFamily> families;
  for (int kplus = 0; kplus <= n; ++kplus) {
    const int exponent = n - 2 * kplus;
    const int sign = (n - kplus) % 2 == 0 ? 1 : -1;
    if (exponent == 0) {
      if (sign == 1) {
        CriticalFamily f = make_family(n, kplus, Complex(1.0, 0.0));
        f.is_continuum = true;
        f.value = 0.0;
        families.push_back(f);
      }
      continue;
    }
    // z^{-m} = sign  <=>  z^m = sign for sign = +-1.
    for (const Complex& z : half_plane_roots(std::abs(exponent), sign)) {
      families.push_back(make_family(n, kplus, z));
    }
  }

  const double gmax = catalog_global_max(families);
  const double gmin = catalog_global_min(families);
  for (auto& f : families) {
    if (f.is_continuum || f.z.real() == 0.0 || (f.kplus > 0 && f.kplus < n)) {
      f.nature = CriticalNature::Saddle;
    } else if (f.kplus == n) {
      f.nature = std::abs(f.value - gmax) <= kValueTie ? CriticalNature::GlobalMax
                                                       : CriticalNature::LocalMaxNotGlobal;
    } else {
      f.nature = std::abs(f.value - gmin) <= kValueTie ? CriticalNature::GlobalMin
                                                       : CriticalNature::LocalMinNotGlobal;
    }
  }
  return families;
}

std::vector<CriticalFamily> trap_report(int n) {
  std::vector<CriticalFamily> traps;
  for (const auto& f : enumerate(n)) {
    if (f.nature == CriticalNature::LocalMaxNotGlobal ||
        f.nature == CriticalNature::LocalMinNotGlobal) {
      traps.push_back(f);
    }
  }
  return traps;
}

double catalog_global_max(const std::vector<CriticalFamily>& catalog) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : catalog) {
    best = std::max(best, f.value);
  }
  return best;
}

double catalog_global_min(const std::vector<CriticalFamily>& catalog) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : catalog) {
    best = std::min(best, f.value);
  }
  return best;
}

CriticalFamily continuum_member(const CriticalFamily& family, double mu) {
  if (!family.is_continuum) {
    throw PreconditionError("continuum_member: family is not a continuum");
  }
  if (!(std::abs(mu) <= 2.0)) {
    std::ostringstream msg;
    msg << "continuum_member: mu = " << mu << " outside [-2, 2]";
    throw PreconditionError(msg.str());
  }
  CriticalFamily member = family;
  member.mu = mu;
  member.z = Complex(block_scale(mu), 0.5 * mu);
  member.value = 0.0;
  return member;
}

std::vector<CriticalFamily> sample_continuum(const CriticalFamily& family, int k) {
  if (k < 1) {
    throw PreconditionError("sample_continuum: need at least one sample");
  }
  std::vector<CriticalFamily> members;
  members.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double mu = k == 1 ? 0.0 : -2.0 + 4.0 * j / (k - 1);
    members.push_back(continuum_member(family, mu));
  }
  return members;
}

bool hessian_vanishes(const CriticalFamily& family) noexcept {
  return family.z.real() == 0.0 || block_scale(family.mu) == 0.0;
}

CatalogEntryPoint materialize(const CriticalFamily& family, const UnitaryPoint& u,
                              std::optional<double> mu) {
  const int n = family.n;
  if (u.dim() != n) {
    throw DimensionError("materialize: conjugator has the wrong dimension");
  }
  CriticalFamily concrete = family;
  if (family.is_continuum) {
    if (!mu) {
      throw PreconditionError("materialize: continuum family needs a concrete mu");
    }
    concrete = continuum_member(family, *mu);
  }
  const double c = concrete.z.real();
  Eigen::VectorXcd diag(n);
  for (int k = 0; k < n; ++k) {
    diag(k) = Complex(k < concrete.kplus ? c : -c, -0.5 * concrete.mu);
  }
  const ComplexMatrix& um = u.matrix();
  ComplexMatrix s = um.adjoint() * diag.asDiagonal() * um;

  std::optional<SpecialUnitaryPoint> point;
  try {
    point.emplace(std::move(s));
  } catch (const InvariantError& e) {
    throw InvariantError(std::string("materialize: ") + e.what());
  }
  const CriticalityResidual crit = criticality_residual(TargetGate::identity(n), *point);
  if (crit.residual > kMaterializeTol) {
    std::ostringstream msg;
    msg << "materialize: criticality residual " << crit.residual << " exceeds "
        << kMaterializeTol;
    throw InvariantError(msg.str());
  }
  return {concrete, u, *point};
}

std::optional<CriticalFamily> match(const SpecialUnitaryPoint& s,
                                    const std::vector<CriticalFamily>& catalog, double tol) {
  const auto n = static_cast<int>(s.dim());
  const CriticalityResidual crit = criticality_residual(TargetGate::identity(n), s);
  if (crit.residual > tol) {
    std::ostringstream msg;
    msg << "match: point is not critical (residual " << crit.residual << ")";
    throw NotCriticalError(msg.str());
  }
  const double mu = crit.mu_hat;
  // W = S + (mu i / 2) I is Hermitian at a critical point, with eigenvalues +-c.
  ComplexMatrix w = s.matrix();
  w.diagonal().array() += 0.5 * mu * kI;
  w = (0.5 * (w + w.adjoint())).eval();
  const RealVector lambda = hermitian_eig(w).values;
  const double c = lambda.cwiseAbs().mean();
  for (const double l : lambda) {
    if (std::abs(std::abs(l) - c) > tol) {
      std::ostringstream msg;
      msg << "match: eigenvalues of S + (mu i/2) I do not cluster at +-" << c;
      throw AmbiguousMatchError(msg.str());
    }
  }
  if (std::abs(c * c + 0.25 * mu * mu - 1.0) > 4.0 * tol) {
    throw AmbiguousMatchError("match: cluster radius inconsistent with mu");
  }

  const bool vanishing = c <= tol;
  const int kplus = static_cast<int>(std::count_if(lambda.begin(), lambda.end(),
                                                   [](double l) { return l > 0.0; }));
  for (const auto& f : catalog) {
    if (f.n != n) {
      continue;
    }
    if (vanishing) {
      if (hessian_vanishes(f) && std::abs(f.mu - mu) <= tol) {
        return f;
      }
      if (f.is_continuum && std::abs(std::abs(mu) - 2.0) <= tol) {
        return continuum_member(f, mu > 0 ? 2.0 : -2.0);
      }
      continue;
    }
    if (f.kplus != kplus) {
      continue;
    }
    if (f.is_continuum) {
      return continuum_member(f, std::clamp(mu, -2.0, 2.0));
    }
    if (std::abs(f.mu - mu) <= tol) {
      return f;
    }
  }
  return std::nullopt;
}

}  // namespace sunland
