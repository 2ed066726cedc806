#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sunland/errors.hpp"
#include "sunland/matrix.hpp"

using namespace sunland;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Matrix, MultiplyMatchesTripleLoop) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix a = oracle::ginibre(n, rng);
    const ComplexMatrix b = oracle::ginibre(n, rng);
    EXPECT_LT(max_abs(multiply(a, b) - oracle::mul(a, b)), 1e-13);
  }
}

TEST(Matrix, MultiplyRejectsMismatchedShapes) {
  EXPECT_THROW(multiply(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(Matrix, AdjointConjugatesAndTransposes) {
  ComplexMatrix a(2, 2);
  a << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
  const ComplexMatrix b = adjoint(a);
  EXPECT_EQ(b(0, 1), Complex(5, -6));
  EXPECT_EQ(b(1, 0), Complex(3, -4));
}

TEST(Matrix, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix a = oracle::ginibre(n, rng);
    const Complex expected = oracle::cofactor_det(a);
    EXPECT_LT(std::abs(determinant(a) - expected), 1e-11 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Matrix, DeterminantOfSingularIsZero) {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 2.0, 4.0;
  EXPECT_EQ(determinant(a), Complex(0.0, 0.0));
}

TEST(Matrix, FrobeniusNormSmallCase) {
  ComplexMatrix a(2, 2);
  a << Complex(3, 0), Complex(0, 4), 0.0, 0.0;
  EXPECT_DOUBLE_EQ(frobenius_norm(a), 5.0);
}

TEST(Matrix, ResidualsVanishOnTheirClasses) {
  std::mt19937_64 rng(3);
  const ComplexMatrix w = oracle::random_skew(4, rng, false);
  const ComplexMatrix h = oracle::ginibre(4, rng);
  EXPECT_LT(skew_residual(w), 1e-14);
  EXPECT_LT(hermiticity_residual(h + h.adjoint()), 1e-14);
  EXPECT_LT(unitarity_residual(oracle::taylor_exp(w)), 1e-13);
  EXPECT_GT(unitarity_residual(h), 1e-3);
}

TEST(Matrix, HermitianEigReconstructsAndSortsDescending) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix g = oracle::ginibre(n, rng);
    const ComplexMatrix h = g + g.adjoint();
    const HermitianEig eig = hermitian_eig(h);
    for (Eigen::Index i = 1; i < eig.values.size(); ++i) {
      EXPECT_GE(eig.values(i - 1), eig.values(i));
    }
    const ComplexMatrix rebuilt =
        oracle::mul(oracle::mul(eig.vectors, eig.values.cast<Complex>().asDiagonal().toDenseMatrix()),
                    oracle::dagger(eig.vectors));
    EXPECT_LT(max_abs(rebuilt - h), 1e-12);
    EXPECT_LT(unitarity_residual(eig.vectors), 1e-12);
  }
}

TEST(Matrix, HermitianEigRejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW(hermitian_eig(a), PreconditionError);
}

TEST(Matrix, HermitianEigKnownSpectrum) {
  ComplexMatrix pauli_y(2, 2);
  pauli_y << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  const HermitianEig eig = hermitian_eig(pauli_y);
  EXPECT_NEAR(eig.values(0), 1.0, 1e-15);
  EXPECT_NEAR(eig.values(1), -1.0, 1e-15);
}

TEST(Matrix, ExpSkewMatchesTaylorSeries) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix w = 3.0 * oracle::random_skew(n, rng, false);
    EXPECT_LT(max_abs(expm_skew(w) - oracle::taylor_exp(w)), 1e-12);
    EXPECT_LT(unitarity_residual(expm_skew(w)), 1e-13);
  }
}

TEST(Matrix, ExpSkewOfDiagonal) {
  ComplexMatrix w = ComplexMatrix::Zero(2, 2);
  w(0, 0) = Complex(0, M_PI);
  w(1, 1) = Complex(0, -M_PI / 2);
  const ComplexMatrix e = expm_skew(w);
  EXPECT_LT(std::abs(e(0, 0) + 1.0), 1e-15);
  EXPECT_LT(std::abs(e(1, 1) - Complex(0, -1)), 1e-15);
}

TEST(Matrix, Expm1SkewKeepsRelativeAccuracyForTinyArguments) {
  std::mt19937_64 rng(6);
  const ComplexMatrix w = oracle::random_skew(4, rng, false);
  for (const double scale : {1e-3, 1e-8, 1e-14}) {
    const ComplexMatrix x = scale * w;
    EXPECT_LT(max_abs(expm1_skew(x) - oracle::taylor_expm1(x)), 1e-14 * scale) << "scale " << scale;
    // exp(x) - I formed by subtraction loses everything at this size.
    if (scale == 1e-14) {
      EXPECT_GT(max_abs((expm_skew(x) - identity(4)) - oracle::taylor_expm1(x)), 1e-3 * scale);
    }
  }
}

TEST(Matrix, ExpRejectsNonSkew) {
  EXPECT_THROW(expm_skew(identity(2)), PreconditionError);
  EXPECT_THROW(expm1_skew(identity(2)), PreconditionError);
}

TEST(Matrix, NonFiniteInputRejected) {
  ComplexMatrix a = identity(2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(require_square_finite(a, "test"), PreconditionError);
  EXPECT_THROW(require_square_finite(ComplexMatrix::Zero(2, 3), "test"), DimensionError);
}
