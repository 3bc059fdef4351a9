#include <gtest/gtest.h>

#include "nrange/linalg.hpp"
#include "nrange/sampling.hpp"
#include "test_support.hpp"

using namespace nrange;
using namespace nrange::test;

namespace {

ComplexMatrix gue(int n, std::uint64_t seed, std::int64_t index = 0) {
  return generate(GeneratorConfig{EnsembleClass::hermitian, n, seed, index + 1}, index);
}

ComplexMatrix ginibre(int n, std::uint64_t seed, std::int64_t index = 0) {
  return generate(GeneratorConfig{EnsembleClass::ginibre, n, seed, index + 1}, index);
}

} // namespace

TEST(Adjoint, Examples) {
  EXPECT_EQ(ComplexMatrix(adjoint(identity(2))), identity(2));
  EXPECT_EQ(ComplexMatrix(adjoint(nilpotent2())), mat({{0.0, 0.0}, {2.0, 0.0}}));
  const complexd i(0, 1);
  EXPECT_EQ(ComplexMatrix(adjoint(mat({{i, 0.0}, {0.0, 0.0}}))), mat({{-i, 0.0}, {0.0, 0.0}}));
}

TEST(Adjoint, InvolutionIsExact) {
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix A = ginibre(5, 3, k);
    EXPECT_EQ(ComplexMatrix(adjoint(ComplexMatrix(adjoint(A)))), A);
  }
}

TEST(HermitianEigen, DiagonalInput) {
  const auto e = hermitian_eigen(diag({3.0, 1.0}));
  EXPECT_DOUBLE_EQ(e.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(e.eigenvalues(1), 3.0);
  // V is a permutation of I.
  EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1.0, 1e-15);
  EXPECT_EQ(e.vectors(0, 0), complexd(0.0));
}

TEST(HermitianEigen, SymmetricTwoByTwo) {
  const auto e = hermitian_eigen(mat({{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-15);
}

TEST(HermitianEigen, RandomGueResidual) {
  const ComplexMatrix H = gue(8, 11);
  const auto e = hermitian_eigen(H);
  EXPECT_LE((e.reconstruct() - H).norm(), 1e-10 * std::max(1.0, H.norm()));
}

TEST(HermitianEigen, RejectsNonHermitian) {
  EXPECT_THROW(hermitian_eigen(nilpotent2()), NotHermitian);
  EXPECT_THROW(hermitian_eigen(ComplexMatrix(2, 3)), InvalidInput);
}

TEST(HermitianEigen, AbsorbsRoundoffAsymmetry) {
  ComplexMatrix H = gue(4, 5);
  H(0, 1) += complexd(1e-14, 0.0);
  EXPECT_NO_THROW(hermitian_eigen(H));
}

TEST(HermitianEigen, ResidualsUpToThirtyTwo) {
  for (int n : {1, 2, 3, 5, 8, 16, 32}) {
    for (int k = 0; k < 5; ++k) {
      const ComplexMatrix H = gue(n, 17, k);
      const auto e = hermitian_eigen(H);
      const double scale = std::max(1.0, H.norm());
      EXPECT_LE((e.reconstruct() - H).norm(), 1e-10 * scale) << "n=" << n;
      EXPECT_LE((e.vectors.adjoint() * e.vectors - identity(n)).norm(), 1e-10) << "n=" << n;
      for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
    }
  }
}

TEST(HermitianEigen, AgreesWithEigenSolver) {
  for (int n : {2, 6, 12}) {
    for (int k = 0; k < 5; ++k) {
      const ComplexMatrix H = gue(n, 23, k);
      const RealVector ours = hermitian_eigenvalues(H);
      const RealVector ref = oracle_eigenvalues(H);
      EXPECT_LE((ours - ref).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(HermitianEigen, DegenerateSpectrum) {
  // Repeated eigenvalues: U diag(1,1,2) U^*.
  const ComplexMatrix U = generate(GeneratorConfig{EnsembleClass::unitary, 3, 1, 1}, 0);
  const ComplexMatrix H = U * diag({1.0, 1.0, 2.0}) * U.adjoint();
  const auto e = hermitian_eigen(ComplexMatrix((H + H.adjoint()) * 0.5));
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-13);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-13);
  EXPECT_NEAR(e.eigenvalues(2), 2.0, 1e-13);
}

TEST(HermitianEigen, FloatInstantiation) {
  using CMf = CMatrix<float>;
  CMf H(2, 2);
  H << 2.0f, std::complex<float>(0, 1), std::complex<float>(0, -1), 2.0f;
  const auto e = hermitian_eigen(H);
  EXPECT_NEAR(e.eigenvalues(0), 1.0f, 1e-5f);
  EXPECT_NEAR(e.eigenvalues(1), 3.0f, 1e-5f);
}

TEST(OperatorNorm, Examples) {
  EXPECT_NEAR(operator_norm(identity(2)), 1.0, 1e-15);
  EXPECT_NEAR(operator_norm(nilpotent2()), 2.0, 1e-15);
  EXPECT_NEAR(operator_norm(diag({1.0, -3.0})), 3.0, 1e-15);
}

TEST(OperatorNorm, AgreesWithSvd) {
  for (int n : {1, 3, 7, 16}) {
    for (int k = 0; k < 5; ++k) {
      const ComplexMatrix A = ginibre(n, 29, k);
      EXPECT_LE(rel(operator_norm(A), oracle_norm(A)), 1e-12);
    }
  }
}

TEST(OperatorNorm, AdjointInvariance) {
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix A = ginibre(1 + k % 9, 31, k);
    EXPECT_LE(rel(operator_norm(A), operator_norm(A.adjoint())), 1e-10);
  }
}

TEST(OperatorNorm, Submultiplicative) {
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 9;
    const ComplexMatrix A = ginibre(n, 37, k);
    const ComplexMatrix D = ginibre(n, 41, k);
    EXPECT_LE(operator_norm(ComplexMatrix(A * D)), operator_norm(A) * operator_norm(D) + 1e-8);
  }
}

TEST(OperatorNorm, HermitianIsSpectralRadius) {
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix H = gue(6, 43, k);
    EXPECT_LE(rel(operator_norm(H), oracle_hermitian_norm(H)), 1e-12);
  }
}

TEST(MatrixAbs, Examples) {
  EXPECT_LE((matrix_abs(nilpotent2()) - diag({0.0, 2.0})).norm(), 1e-14);
  EXPECT_LE((matrix_abs(diag({-3.0, 1.0})) - diag({3.0, 1.0})).norm(), 1e-14);
  const ComplexMatrix P = generate(GeneratorConfig{EnsembleClass::positive_definite, 4, 5, 1}, 0);
  EXPECT_LE((matrix_abs(P) - P).norm(), 1e-10 * P.norm());
}

TEST(MatrixAbs, SquaresToGramAndKeepsNorm) {
  for (int k = 0; k < 30; ++k) {
    const ComplexMatrix A = ginibre(1 + k % 8, 47, k);
    const ComplexMatrix M = matrix_abs(A);
    EXPECT_TRUE(is_hermitian(M));
    EXPECT_TRUE(is_psd(M, 1e-10));
    EXPECT_LE((M * M - A.adjoint() * A).norm(), 1e-10 * std::max(1.0, (A.adjoint() * A).norm()));
    EXPECT_LE(rel(operator_norm(M), operator_norm(A)), 1e-10);
  }
}

TEST(CartesianDecomposition, Examples) {
  const complexd i(0, 1);
  const ComplexMatrix H = gue(3, 53);
  const auto h = cartesian_decomposition(H);
  EXPECT_LE((h.real_part - H).norm(), 1e-15);
  EXPECT_LE(h.imag_part.norm(), 1e-15);

  const auto n = cartesian_decomposition(nilpotent2());
  EXPECT_EQ(n.real_part, mat({{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_EQ(n.imag_part, mat({{0.0, -i}, {i, 0.0}}));

  const ComplexMatrix S = generate(GeneratorConfig{EnsembleClass::skew_hermitian, 3, 2, 1}, 0);
  const auto s = cartesian_decomposition(S);
  EXPECT_LE(s.real_part.norm(), 1e-15);
  EXPECT_LE((s.imag_part - S / i).norm(), 1e-14);
}

TEST(CartesianDecomposition, Reconstructs) {
  const complexd i(0, 1);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix A = ginibre(1 + k % 8, 59, k);
    const auto p = cartesian_decomposition(A);
    EXPECT_TRUE(is_hermitian(p.real_part, 1e-12));
    EXPECT_TRUE(is_hermitian(p.imag_part, 1e-12));
    EXPECT_LE((p.real_part + i * p.imag_part - A).norm(), 1e-12 * std::max(1.0, A.norm()));
  }
}

TEST(IsPsd, Examples) {
  EXPECT_TRUE(is_psd(identity(2), 1e-10));
  EXPECT_FALSE(is_psd(diag({1.0, -1.0}), 1e-10));
  EXPECT_TRUE(is_psd(ComplexMatrix::Zero(2, 2), 1e-10));
  EXPECT_THROW(is_psd(nilpotent2(), 1e-10), NotHermitian);
}

TEST(IsPsd, ToleranceIsRelative) {
  EXPECT_TRUE(is_psd(diag({100.0, -1e-9}), 1e-10));
  EXPECT_FALSE(is_psd(diag({100.0, -1e-7}), 1e-10));
}
