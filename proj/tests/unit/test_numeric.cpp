#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dla/dense_operator.hpp"
#include "dla/numeric.hpp"
#include "dla/pauli.hpp"

namespace {

using dla::DenseOperator;
using dla::PauliCombination;

TEST(OrthonormalExtend, GrowsOnIndependentAndRejectsDependent) {
  const auto x = PauliCombination::from_strings({{"XI", 1.0}});
  const auto z = PauliCombination::from_strings({{"ZI", 2.0}});
  const auto xz = PauliCombination::from_strings({{"XI", 3.0}, {"ZI", -1.0}});
  std::vector<PauliCombination> basis;

  auto r1 = dla::orthonormal_extend<PauliCombination>(basis, x);
  ASSERT_TRUE(r1.extended());
  basis.push_back(*r1.element);
  EXPECT_NEAR(dla::hs_inner(basis[0], basis[0]), 1.0, 1e-14);

  auto r2 = dla::orthonormal_extend<PauliCombination>(basis, z);
  ASSERT_TRUE(r2.extended());
  basis.push_back(*r2.element);
  EXPECT_NEAR(dla::hs_inner(basis[0], basis[1]), 0.0, 1e-14);

  auto r3 = dla::orthonormal_extend<PauliCombination>(basis, xz);
  EXPECT_EQ(r3.status, dla::ExtendStatus::kRejected);
  EXPECT_LT(r3.residual_norm, 1e-12);

  auto r4 = dla::orthonormal_extend<PauliCombination>(basis, PauliCombination(2));
  EXPECT_EQ(r4.status, dla::ExtendStatus::kTrivial);
}

TEST(OrthonormalExtend, CoefficientsReconstructCandidate) {
  std::mt19937_64 rng(11);
  std::vector<DenseOperator> ops;
  for (int k = 0; k < 4; ++k) ops.push_back(dla::random_traceless_anti_hermitian(4, rng));
  const auto basis = dla::orthonormalize<DenseOperator>(ops);
  ASSERT_EQ(basis.size(), 4u);
  DenseOperator c = 0.5 * ops[0] - 2.0 * ops[3];
  const auto r = dla::orthonormal_extend<DenseOperator>(basis, c);
  EXPECT_EQ(r.status, dla::ExtendStatus::kRejected);
  DenseOperator rebuilt = DenseOperator::zero(4);
  for (std::size_t k = 0; k < basis.size(); ++k) dla::axpy(rebuilt, r.coefficients[k], basis[k]);
  EXPECT_LT(dla::hs_norm(rebuilt - c), 1e-12 * dla::hs_norm(c));
}

TEST(NumericalRank, MatchesConstruction) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(6, 3) * Eigen::MatrixXd::Random(3, 5);
  EXPECT_EQ(dla::numerical_rank(m, 1e-9), 3u);
  EXPECT_EQ(dla::numerical_rank(Eigen::MatrixXd::Zero(3, 3), 1e-9), 0u);
  const Eigen::MatrixXd ns = dla::null_space(m, 1e-9);
  EXPECT_EQ(ns.cols(), 2);
  EXPECT_LT((m * ns).norm(), 1e-10);
}

TEST(Jacobi, AgreesWithEigenSelfAdjointSolver) {
  std::mt19937_64 rng(3);
  for (int n : {1, 2, 5, 8}) {
    const DenseOperator h = dla::random_hermitian(n, rng);
    const auto pairs = dla::jacobi_eigensolver(h.matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(h.matrix());
    ASSERT_EQ(pairs.values.size(), n);
    for (int k = 0; k < n; ++k) EXPECT_NEAR(pairs.values[k], ref.eigenvalues()[k], 1e-10);
    const Eigen::MatrixXcd recon =
        pairs.vectors * pairs.values.cast<std::complex<double>>().asDiagonal() * pairs.vectors.adjoint();
    EXPECT_LT((recon - h.matrix()).norm(), 1e-10);
    EXPECT_LT((pairs.vectors.adjoint() * pairs.vectors - Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-10);
  }
}

TEST(HermitianEig, GroupsDegenerateEigenvalues) {
  const std::vector<double> spec{1.0, 2.0, 3.0, 3.0};
  dla::SpectrumOptions opts;
  opts.style = dla::SpectrumStyle::kRandomConjugated;
  opts.require_distinct = false;
  opts.seed = 5;
  const DenseOperator h = dla::build_hermitian_with_spectrum(spec, opts);
  const auto d = dla::hermitian_eig(h);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d.eigenvalues[0], 1.0, 1e-10);
  EXPECT_NEAR(d.eigenvalues[2], 3.0, 1e-10);
  EXPECT_EQ(d.multiplicities, (std::vector<int>{1, 1, 2}));
  EXPECT_LT(dla::hs_norm(d.reconstruct() - h), 1e-10);
  for (std::size_t a = 0; a < d.size(); ++a) {
    const auto& p = d.projectors[a];
    EXPECT_LT(dla::hs_norm(p * p - p), 1e-10);
    EXPECT_NEAR(p.trace().real(), d.multiplicities[a], 1e-10);
    for (std::size_t b = 0; b < a; ++b) EXPECT_LT(dla::hs_norm(p * d.projectors[b]), 1e-10);
  }
}

TEST(HermitianEig, RejectsNonHermitian) {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 0, 0;
  try {
    dla::hermitian_eig(DenseOperator(m));
    FAIL();
  } catch (const dla::Error& e) {
    EXPECT_EQ(e.code(), dla::ErrorCode::kNotHermitian);
  }
}

TEST(PowerSpan, DistinctValuesSpanAndZeroBreaksPositiveOffsets) {
  const std::vector<double> good{1.0, 2.0, 3.0};
  EXPECT_TRUE(dla::power_span_check(good, 0, 1).spans);
  EXPECT_TRUE(dla::power_span_check(good, 1, 2).spans);
  const std::vector<double> with_zero{0.0, 1.0, 2.0};
  EXPECT_TRUE(dla::power_span_check(with_zero, 0, 1).spans);
  const auto r = dla::power_span_check(with_zero, 1, 1);
  EXPECT_FALSE(r.spans);
  EXPECT_TRUE(r.structurally_singular);
  // Squares collide for +-1, so stride 2 cannot separate them.
  const std::vector<double> pm{-1.0, 1.0};
  EXPECT_FALSE(dla::power_span_check(pm, 1, 2).spans);
}

}  // namespace
