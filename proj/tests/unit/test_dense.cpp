#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dla/dense_operator.hpp"
#include "dla/numeric.hpp"
#include "oracles.hpp"

namespace {

using dla::DenseOperator;

TEST(DenseOperator, TensorMatchesKron) {
  std::mt19937_64 rng(1);
  const auto a = dla::random_traceless_anti_hermitian(2, rng);
  const auto h = dla::random_hermitian(4, rng);
  const auto t = dla::dense_tensor(a, h);
  EXPECT_EQ(t.dim(), 8);
  EXPECT_LT((t.matrix() - oracle::kron(a.matrix(), h.matrix())).norm(), 1e-13);
  EXPECT_EQ(t.qubit_count(), 3);
}

TEST(DenseOperator, CommutatorAndPredicates) {
  std::mt19937_64 rng(2);
  const auto a = dla::random_traceless_anti_hermitian(4, rng);
  const auto b = dla::random_traceless_anti_hermitian(4, rng);
  EXPECT_TRUE(a.is_anti_hermitian());
  EXPECT_FALSE(a.is_hermitian());
  const auto c = dla::commutator(a, b);
  EXPECT_LT((c.matrix() - oracle::comm(a.matrix(), b.matrix())).norm(), 1e-13);
  EXPECT_TRUE(c.is_anti_hermitian(1e-12));
  EXPECT_NEAR(std::abs(c.trace()), 0.0, 1e-12);
  EXPECT_FALSE(DenseOperator(Eigen::MatrixXcd::Identity(3, 3)).qubit_count().has_value());
}

TEST(DenseOperator, MatrixPower) {
  const auto d = DenseOperator::diagonal(std::vector<double>{2.0, -1.0});
  const auto p = dla::matrix_power(d, 3);
  EXPECT_NEAR(p.matrix()(0, 0).real(), 8.0, 1e-14);
  EXPECT_NEAR(p.matrix()(1, 1).real(), -1.0, 1e-14);
  EXPECT_LT(dla::hs_norm(dla::matrix_power(d, 0) - DenseOperator::identity(2)), 1e-14);
}

TEST(Spectrum, DiagonalBuildPadsWithLastValue) {
  dla::SpectrumOptions opts;
  opts.require_distinct = false;
  const auto h = dla::build_hermitian_with_spectrum(std::vector<double>{1.0, 2.0, 3.0}, opts);
  EXPECT_EQ(h.dim(), 4);
  EXPECT_NEAR(h.matrix()(3, 3).real(), 3.0, 1e-14);
}

TEST(Spectrum, RandomConjugatedKeepsSpectrum) {
  dla::SpectrumOptions opts;
  opts.style = dla::SpectrumStyle::kRandomConjugated;
  opts.seed = 42;
  const std::vector<double> spec{-1.0, 0.5, 2.0, 4.0};
  const auto h = dla::build_hermitian_with_spectrum(spec, opts);
  EXPECT_TRUE(h.is_hermitian(1e-12));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(es.eigenvalues()[k], spec[static_cast<std::size_t>(k)], 1e-10);
  // Same seed, same matrix.
  const auto again = dla::build_hermitian_with_spectrum(spec, opts);
  EXPECT_EQ(h.matrix(), again.matrix());
}

TEST(Spectrum, DuplicatesAndSignPairsRejectedOnRequest) {
  dla::SpectrumOptions opts;
  try {
    dla::build_hermitian_with_spectrum(std::vector<double>{1.0, 1.0}, opts);
    FAIL();
  } catch (const dla::Error& e) {
    EXPECT_EQ(e.code(), dla::ErrorCode::kDuplicateEigenvalues);
  }
  opts.require_sign_unambiguous = true;
  try {
    dla::build_hermitian_with_spectrum(std::vector<double>{-2.0, 2.0}, opts);
    FAIL();
  } catch (const dla::Error& e) {
    EXPECT_EQ(e.code(), dla::ErrorCode::kSignAmbiguous);
  }
}

TEST(Spectrum, SignUnambiguity) {
  EXPECT_TRUE(dla::sign_unambiguous(DenseOperator::diagonal(std::vector<double>{1.0, 2.0})));
  EXPECT_FALSE(dla::sign_unambiguous(DenseOperator::diagonal(std::vector<double>{1.0, -1.0})));
  // Zero is ignored: {0, 0} and {0, 3} are fine.
  EXPECT_TRUE(dla::sign_unambiguous(DenseOperator::diagonal(std::vector<double>{0.0, 3.0})));
  EXPECT_FALSE(dla::sign_unambiguous(DenseOperator::diagonal(std::vector<double>{-3.0, 0.0, 1.0, 3.0})));
}

TEST(Spectrum, SquareScalarCheck) {
  const DenseOperator ix(oracle::cd(0, 1) * oracle::pauli("XZ"));
  const auto l = dla::square_scalar_check(ix);
  ASSERT_TRUE(l.has_value());
  EXPECT_NEAR(*l, -1.0, 1e-14);
  const DenseOperator sum(oracle::cd(0, 1) * (oracle::pauli("XI") + oracle::pauli("IZ")));
  EXPECT_FALSE(dla::square_scalar_check(sum).has_value());
}

TEST(RandomUnitary, IsUnitary) {
  std::mt19937_64 rng(8);
  const auto u = dla::random_unitary(5, rng);
  EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(5, 5)).norm(), 1e-12);
}

}  // namespace
