#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sunland/critical_catalog.hpp"
#include "sunland/errors.hpp"
#include "sunland/fidelity_landscape.hpp"

using namespace sunland;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (const Complex& e : entries) {
    d(i, i) = e;
    ++i;
  }
  return d;
}

double oracle_fidelity(const ComplexMatrix& a, const ComplexMatrix& u) {
  return oracle::trace(oracle::mul(oracle::dagger(a), u)).real();
}

// G along exp(t W) s with the oracle exponential.
double fidelity_along(const ComplexMatrix& a, const ComplexMatrix& s, const ComplexMatrix& w,
                      double t) {
  return oracle_fidelity(a, oracle::mul(oracle::taylor_exp(t * w), s));
}

SpecialUnitaryPoint trap_point_5() {
  return SpecialUnitaryPoint(std::polar(1.0, -2.0 * M_PI / 5.0) * identity(5));
}

}  // namespace

TEST(Target, AdmissionAndMode) {
  EXPECT_TRUE(TargetGate::identity(3).su_mode());
  EXPECT_FALSE(TargetGate(diag({kI, 1.0})).su_mode());
  EXPECT_THROW(TargetGate(2.0 * identity(2)), InvariantError);
}

TEST(Fidelity, ExtremeValues) {
  std::mt19937_64 rng(61);
  const UnitaryPoint a = random_unitary(4, rng);
  EXPECT_NEAR(fidelity(TargetGate(a.matrix()), a), 4.0, 1e-13);
  EXPECT_DOUBLE_EQ(fidelity(TargetGate::identity(3), UnitaryPoint(-identity(3))), -3.0);
  EXPECT_THROW(fidelity(TargetGate::identity(3), UnitaryPoint(identity(2))), DimensionError);
}

TEST(Fidelity, LeastSquaresIdentity) {
  std::mt19937_64 rng(62);
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < 50; ++i) {
      const ComplexMatrix a = oracle::random_su(n, rng);
      const ComplexMatrix s = oracle::random_su(n, rng);
      const ComplexMatrix d = a - s;
      double dist_sq = 0.0;
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
          dist_sq += std::norm(d(r, c));
        }
      }
      const double f = fidelity(TargetGate(a), UnitaryPoint(s));
      EXPECT_NEAR(dist_sq, 2.0 * n - 2.0 * f, 1e-12);
      EXPECT_LE(std::abs(f), n + 1e-12);
    }
  }
}

TEST(AmbientGradient, ClosedForms) {
  std::mt19937_64 rng(63);
  const UnitaryPoint a = random_unitary(3, rng);
  EXPECT_LT(ambient_gradient(TargetGate(a.matrix()), a).norm(), 1e-14);
  const ComplexMatrix g =
      ambient_gradient(TargetGate::identity(2), UnitaryPoint(diag({kI, -kI})));
  EXPECT_LT((g - diag({2.0, 2.0})).norm(), 1e-15);
}

TEST(AmbientGradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(64);
  for (int n = 2; n <= 5; ++n) {
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix a = random_unitary(n, rng).matrix();
      const ComplexMatrix u = random_unitary(n, rng).matrix();
      const ComplexMatrix w = oracle::random_skew(n, rng, false);
      const double fd =
          oracle::central_diff([&](double t) { return fidelity_along(a, u, w, t); }, 1e-5);
      const ComplexMatrix g = ambient_gradient(TargetGate(a), UnitaryPoint(u));
      EXPECT_NEAR(ambient_inner(g, w * u), fd, 1e-6 * std::max(1.0, std::abs(fd)));
      EXPECT_LT(skew_residual(g * u.adjoint()), 1e-12);
    }
  }
}

TEST(SunFidelityGradient, VanishesAtKnownCriticalPoints) {
  std::mt19937_64 rng(65);
  const SpecialUnitaryPoint a = random_special_unitary(3, rng);
  EXPECT_LT(sun_fidelity_gradient(TargetGate(a.matrix()), a).norm(), 1e-13);
  EXPECT_LT(sun_fidelity_gradient(TargetGate::identity(4), SpecialUnitaryPoint(-identity(4))).norm(),
            1e-15);
  EXPECT_LT(sun_fidelity_gradient(TargetGate::identity(3),
                                  SpecialUnitaryPoint(diag({1.0, -1.0, -1.0})))
                .norm(),
            1e-15);
  EXPECT_LT(sun_fidelity_gradient(TargetGate::identity(5), trap_point_5()).norm(), 1e-14);
}

TEST(SunFidelityGradient, RequiresSpecialUnitaryTarget) {
  EXPECT_THROW(sun_fidelity_gradient(TargetGate(diag({kI, 1.0})), SpecialUnitaryPoint::identity(2)),
               PreconditionError);
}

TEST(SunFidelityGradient, EqualsProjectedAmbientGradient) {
  std::mt19937_64 rng(66);
  for (int n = 2; n <= 6; ++n) {
    const TargetGate a(random_special_unitary(n, rng).matrix());
    const SpecialUnitaryPoint s = random_special_unitary(n, rng);
    const ComplexMatrix expected = sun_gradient(s, ambient_gradient(a, s));
    EXPECT_LT((sun_fidelity_gradient(a, s) - expected).cwiseAbs().maxCoeff(), 1e-13);
    const TangentDirection dir = sun_fidelity_direction(a, s);
    EXPECT_TRUE(dir.is_traceless());
    EXPECT_LT((dir.omega() * s.matrix() - expected).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Criticality, ResidualExamples) {
  std::mt19937_64 rng(67);
  const SpecialUnitaryPoint a = random_special_unitary(3, rng);
  const CriticalityResidual at_target = criticality_residual(TargetGate(a.matrix()), a);
  EXPECT_NEAR(at_target.mu_hat, 0.0, 1e-14);
  EXPECT_LT(at_target.residual, 1e-14);

  const Complex z(-0.5, -std::sqrt(3.0) / 2.0);
  const CriticalityResidual minimum =
      criticality_residual(TargetGate::identity(3), SpecialUnitaryPoint(z * identity(3)));
  EXPECT_NEAR(minimum.mu_hat, std::sqrt(3.0), 1e-14);
  EXPECT_LT(minimum.residual, 1e-12);

  int large = 0;
  for (int i = 0; i < 20; ++i) {
    large += criticality_residual(TargetGate::identity(4), random_special_unitary(4, rng)).residual >
                     0.1
                 ? 1
                 : 0;
  }
  EXPECT_GE(large, 18);
}

TEST(HessianQuadratic, NegativeDefiniteAtIdentity) {
  std::mt19937_64 rng(68);
  for (int i = 0; i < 20; ++i) {
    const TangentDirection d = random_su_direction(4, rng);
    EXPECT_NEAR(hessian_quadratic(TargetGate::identity(4), SpecialUnitaryPoint::identity(4), d),
                -d.omega().squaredNorm(), 1e-13);
  }
}

TEST(HessianQuadratic, IndefiniteAtBalancedSaddle) {
  const SpecialUnitaryPoint s(diag({1.0, 1.0, -1.0, -1.0}));
  const TargetGate a = TargetGate::identity(4);
  const auto up = TangentDirection::traceless(diag({kI, -kI, 0.0, 0.0}));
  const auto down = TangentDirection::traceless(diag({0.0, 0.0, kI, -kI}));
  EXPECT_NEAR(hessian_quadratic(a, s, up), -2.0, 1e-15);
  EXPECT_NEAR(hessian_quadratic(a, s, down), 2.0, 1e-15);
}

TEST(HessianQuadratic, RejectsDirectionWithTrace) {
  EXPECT_THROW(hessian_quadratic(TargetGate::identity(2), SpecialUnitaryPoint::identity(2),
                                 TangentDirection(kI * identity(2))),
               PreconditionError);
}

TEST(HessianQuadratic, MatchesSecondDifferenceAtCriticalPoints) {
  std::mt19937_64 rng(69);
  for (int n = 2; n <= 5; ++n) {
    for (const auto& family : enumerate(n)) {
      const double mu = family.is_continuum ? 0.7 : family.mu;
      const CatalogEntryPoint p = materialize(family, random_unitary(n, rng), mu);
      const ComplexMatrix a = random_special_unitary(n, rng).matrix();
      const ComplexMatrix s = a * p.s.matrix();
      const ComplexMatrix w = oracle::random_skew(n, rng, true);
      const double fd =
          oracle::second_diff([&](double t) { return fidelity_along(a, s, w, t); }, 1e-3);
      const double q = hessian_quadratic(TargetGate(a), SpecialUnitaryPoint(s),
                                         TangentDirection::traceless(w));
      EXPECT_NEAR(q, fd, 1e-5 * std::max(1.0, std::abs(q))) << "n=" << n << " kplus=" << family.kplus;
    }
  }
}

TEST(HessianQuadratic, BilinearPolarizes) {
  std::mt19937_64 rng(70);
  const TargetGate a(random_special_unitary(3, rng).matrix());
  const SpecialUnitaryPoint s = random_special_unitary(3, rng);
  const TangentDirection x = random_su_direction(3, rng);
  const TangentDirection y = random_su_direction(3, rng);
  const TangentDirection sum = TangentDirection::traceless(x.omega() + y.omega());
  const double polar = 0.5 * (hessian_quadratic(a, s, sum) - hessian_quadratic(a, s, x) -
                              hessian_quadratic(a, s, y));
  EXPECT_NEAR(hessian_bilinear(a, s, x, y), polar, 1e-13);
  EXPECT_NEAR(hessian_bilinear(a, s, x, x), hessian_quadratic(a, s, x), 1e-13);
}

TEST(HessianMatrix, DiagonalMatchesQuadraticForm) {
  std::mt19937_64 rng(71);
  const TargetGate a(random_special_unitary(4, rng).matrix());
  const SpecialUnitaryPoint s = random_special_unitary(4, rng);
  const SuNBasis basis = sun_basis(4);
  const RealMatrix h = hessian_form_matrix(a, s, basis);
  EXPECT_LT((h - h.transpose()).norm(), 1e-12);
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    EXPECT_NEAR(h(i, i), hessian_quadratic(a, s, basis.elements[static_cast<std::size_t>(i)]),
                1e-12);
  }
}

TEST(HessianMatrix, SpectraOfReferencePoints) {
  const TargetGate i3 = TargetGate::identity(3);
  const HessianSpectrum top = hessian_matrix(i3, SpecialUnitaryPoint::identity(3), sun_basis(3));
  EXPECT_EQ(top.n_neg, 8);
  for (Eigen::Index k = 0; k < top.eigenvalues.size(); ++k) {
    EXPECT_NEAR(top.eigenvalues(k), -2.0, 1e-13);
  }

  const HessianSpectrum saddle =
      hessian_matrix(i3, SpecialUnitaryPoint(diag({1.0, -1.0, -1.0})), sun_basis(3));
  EXPECT_TRUE(saddle.mixed());
  EXPECT_EQ(saddle.n_pos + saddle.n_neg + saddle.n_zero, 8);

  const HessianSpectrum flat = hessian_matrix(
      TargetGate::identity(4), SpecialUnitaryPoint(-kI * identity(4)), sun_basis(4));
  EXPECT_EQ(flat.n_zero, 15);
  EXPECT_LT(flat.eigenvalues.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(HessianMatrix, EigenvaluesAscending) {
  std::mt19937_64 rng(72);
  const HessianSpectrum spec = hessian_matrix(TargetGate(random_special_unitary(3, rng).matrix()),
                                              random_special_unitary(3, rng), sun_basis(3));
  for (Eigen::Index k = 1; k < spec.eigenvalues.size(); ++k) {
    EXPECT_LE(spec.eigenvalues(k - 1), spec.eigenvalues(k));
  }
}

TEST(Classify, ReferenceNatures) {
  std::mt19937_64 rng(73);
  const SpecialUnitaryPoint a = random_special_unitary(3, rng);
  const TargetGate target(a.matrix());
  EXPECT_EQ(classify(target, a, hessian_matrix(target, a, sun_basis(3)), 3.0, -1.5),
            CriticalNature::GlobalMax);

  const TargetGate i5 = TargetGate::identity(5);
  const double gmin5 = -5.0 * std::cos(M_PI / 5.0);
  EXPECT_EQ(classify(i5, trap_point_5(), hessian_matrix(i5, trap_point_5(), sun_basis(5)), 5.0, gmin5),
            CriticalNature::LocalMaxNotGlobal);

  const TargetGate i4 = TargetGate::identity(4);
  const SpecialUnitaryPoint west(-kI * identity(4));
  EXPECT_EQ(classify(i4, west, hessian_matrix(i4, west, sun_basis(4)), 4.0, -4.0),
            CriticalNature::Degenerate);
}

TEST(Classify, RefusesNonCriticalAndNonSpecialTargets) {
  std::mt19937_64 rng(74);
  const TargetGate i3 = TargetGate::identity(3);
  const SpecialUnitaryPoint s = random_special_unitary(3, rng);
  EXPECT_THROW(classify(i3, s, hessian_matrix(i3, s, sun_basis(3)), 3.0, -1.5), NotCriticalError);
  const TargetGate phase(diag({kI, 1.0, 1.0}));
  const SpecialUnitaryPoint id = SpecialUnitaryPoint::identity(3);
  EXPECT_THROW(classify(phase, id, hessian_matrix(phase, id, sun_basis(3)), 3.0, -1.5),
               PreconditionError);
  // Residuals stay available for targets outside SU(N).
  EXPECT_NO_THROW(criticality_residual(phase, id));
}

TEST(Classify, SpectrumThresholdIsRelative) {
  RealVector ev(3);
  ev << -1e3, 5e-7, 2.0;
  const HessianSpectrum s = classify_spectrum(ev);
  EXPECT_EQ(s.n_neg, 1);
  EXPECT_EQ(s.n_zero, 1);
  EXPECT_EQ(s.n_pos, 1);
  EXPECT_DOUBLE_EQ(s.zero_threshold, 1e-6);
}

TEST(Natures, NamesRoundTrip) {
  for (const auto nature : {CriticalNature::GlobalMax, CriticalNature::GlobalMin,
                            CriticalNature::LocalMaxNotGlobal, CriticalNature::LocalMinNotGlobal,
                            CriticalNature::Saddle, CriticalNature::Degenerate}) {
    EXPECT_EQ(parse_nature(to_string(nature)), nature);
  }
  EXPECT_FALSE(parse_nature("Maximum").has_value());
}

TEST(TargetReduction, LeftTranslationPreservesLandscape) {
  std::mt19937_64 rng(75);
  for (int n = 2; n <= 5; ++n) {
    const SuNBasis basis = sun_basis(n);
    for (int i = 0; i < 10; ++i) {
      const ComplexMatrix a = random_special_unitary(n, rng).matrix();
      const SpecialUnitaryPoint s = random_special_unitary(n, rng);
      const SpecialUnitaryPoint as(a * s.matrix());
      const TargetGate target(a);
      const TargetGate id = TargetGate::identity(n);
      EXPECT_NEAR(fidelity(target, as), fidelity(id, s), 1e-12);
      EXPECT_NEAR(criticality_residual(target, as).residual, criticality_residual(id, s).residual,
                  1e-10);
      const HessianSpectrum h1 = hessian_matrix(target, as, basis);
      const HessianSpectrum h2 = hessian_matrix(id, s, basis);
      EXPECT_LT((h1.eigenvalues - h2.eigenvalues).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(RestrictedHessian, ConstraintCorrectionVanishesOnSpecialUnitary) {
  std::mt19937_64 rng(76);
  const embedded::InnerProduct<ComplexMatrix> ip = ambient_inner;
  const auto constraints = sun_constraint_system();
  for (int n = 2; n <= 5; ++n) {
    for (int i = 0; i < 20; ++i) {
      const TargetGate a(random_special_unitary(n, rng).matrix());
      const SpecialUnitaryPoint s = random_special_unitary(n, rng);
      const TangentDirection d = random_su_direction(n, rng);
      const auto sigma =
          embedded::lagrange_multipliers(s.matrix(), ambient_gradient(a, s), constraints, ip);
      const std::function<double(const ComplexMatrix&)> hess_g = [&](const ComplexMatrix& v) {
        return hessian_quadratic(a, s, TangentDirection::traceless(v * s.matrix().adjoint()));
      };
      const ComplexMatrix v = d.omega() * s.matrix();
      const double corrected =
          embedded::restricted_hessian_quadratic(s.matrix(), hess_g, constraints, sigma, v, ip);
      EXPECT_NEAR(corrected, hessian_quadratic(a, s, d), 1e-10);
    }
  }
}
