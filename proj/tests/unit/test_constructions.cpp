#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dla/constructions.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace {

using dla::DenseOperator;
using dla::GeneratorSpec;
using testing_support::diag;

dla::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const dla::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return dla::ErrorCode::kInvalidArgument;
}

TEST(ExtendNaive, BuildsPowerMajorLayers) {
  const auto spec = dla::extend_naive(testing_support::xz(), diag({1, 2}), 2);
  ASSERT_EQ(spec.size(), 4u);
  EXPECT_EQ(spec.qubit_count(), 2u);
  const auto g = testing_support::oracle_generators(spec);
  const oracle::Mat chi = oracle::diag({1, 2});
  EXPECT_LT((g[0] - oracle::kron(oracle::cd(0, 1) * oracle::pauli("X"), oracle::Mat::Identity(2, 2))).norm(), 1e-12);
  EXPECT_LT((g[3] - oracle::kron(oracle::cd(0, 1) * oracle::pauli("Z"), chi)).norm(), 1e-12);
}

TEST(ExtendNaive, QOneAndDegenerateChi) {
  const auto one = dla::extend_naive(testing_support::xz(), diag({1, 2}), 1);
  EXPECT_EQ(one.size(), 2u);
  EXPECT_EQ(one.qubit_count(), 2u);
  EXPECT_EQ(code_of([] { dla::extend_naive(testing_support::xz(), diag({1, 1}), 1); }),
            dla::ErrorCode::kPreconditionFailed);
  EXPECT_EQ(code_of([] { dla::extend_naive(testing_support::xz(), diag({1, 2}), 3); }),
            dla::ErrorCode::kInvalidArgument);
}

TEST(ExtendSubset, SizesFollowSubset) {
  const std::vector<std::size_t> all{0, 1}, first{0}, none{};
  EXPECT_EQ(dla::extend_subset(testing_support::xz(), diag({1, 2}), all).size(), 4u);
  EXPECT_EQ(dla::extend_subset(testing_support::xz(), diag({1, 2}), first).size(), 3u);
  EXPECT_EQ(code_of([&] { dla::extend_subset(testing_support::xz(), diag({1, 2}), none); }),
            dla::ErrorCode::kInvalidArgument);
}

TEST(TensorQ, ExpandsAndRejects) {
  const auto spec = dla::tensor_q(testing_support::xz(), diag({1, 2}));
  ASSERT_EQ(spec.size(), 2u);
  const auto g = testing_support::oracle_generators(spec);
  EXPECT_LT((g[0] - oracle::kron(oracle::cd(0, 1) * oracle::pauli("X"), oracle::diag({1, 2}))).norm(), 1e-12);
  EXPECT_EQ(code_of([] { dla::tensor_q(testing_support::xz(), DenseOperator(oracle::pauli("Z"))); }),
            dla::ErrorCode::kSignAmbiguous);
  const auto same = dla::tensor_q(testing_support::xz(), DenseOperator::identity(2));
  EXPECT_EQ(testing_support::analyze(same).dim_g, 3u);
}

TEST(Graphs, NamedAndValidated) {
  EXPECT_EQ(dla::Graph::named("cycle4").edges.size(), 4u);
  EXPECT_EQ(dla::Graph::named("K4").edges.size(), 6u);
  EXPECT_EQ(dla::Graph::named("path3").edges.size(), 2u);
  EXPECT_THROW(dla::Graph::named("wheel5"), dla::Error);
  dla::Graph g;
  g.vertices = 3;
  EXPECT_THROW(g.validate(), dla::Error);
  g.edges = {{0, 0}};
  EXPECT_THROW(g.validate(), dla::Error);
}

TEST(Qaoa, TriangleMaxCut) {
  const auto spec = dla::qaoa_generators(dla::Graph::complete(3), dla::QaoaFamily::kMaxCut);
  ASSERT_EQ(spec.size(), 2u);
  const auto g = testing_support::oracle_generators(spec);
  const oracle::Mat x = oracle::cd(0, 1) * (oracle::pauli("XII") + oracle::pauli("IXI") + oracle::pauli("IIX"));
  const oracle::Mat zz = oracle::cd(0, 1) * (oracle::pauli("ZZI") + oracle::pauli("IZZ") + oracle::pauli("ZIZ"));
  EXPECT_LT((g[0] - x).norm(), 1e-12);
  EXPECT_LT((g[1] - zz).norm(), 1e-12);
  EXPECT_EQ(dla::qaoa_generators(dla::Graph::complete(2), dla::QaoaFamily::kSnEquivariant).size(), 3u);
  EXPECT_EQ(dla::parse_qaoa_family("S"), dla::QaoaFamily::kSnEquivariant);
}

TEST(DetectCyclic, PauliPairAndCommutingSet) {
  const auto r = dla::detect_cyclic(testing_support::xz());
  EXPECT_TRUE(r.cyclic());
  ASSERT_TRUE(r.common_cycle_length.has_value());
  EXPECT_EQ(*r.common_cycle_length, 2u);
  const auto commuting = testing_support::pauli_spec({{{"ZI", 1}}, {{"IZ", 1}}});
  const auto c = dla::detect_cyclic(commuting);
  EXPECT_TRUE(c.noncommuting_pairs.empty());
  EXPECT_FALSE(c.common_cycle_length.has_value());
}

TEST(DetectCyclic, QaoaFamilies) {
  for (auto fam : {dla::QaoaFamily::kMaxCut, dla::QaoaFamily::kSnEquivariant}) {
    const auto r = dla::detect_cyclic(dla::qaoa_generators(dla::Graph::cycle(4), fam));
    ASSERT_TRUE(r.common_cycle_length.has_value());
    EXPECT_EQ(*r.common_cycle_length, 2u);
  }
}

TEST(FourLambda, PauliExamples) {
  using testing_support::pc;
  const auto r = dla::verify_4lambda_identity(pc({{"X", 1}}), pc({{"Z", 1}}));
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.lambda, -1.0, 1e-14);
  const auto s = dla::verify_4lambda_identity(pc({{"ZZ", 1}}), pc({{"XI", 1}}));
  EXPECT_TRUE(s.holds);
  EXPECT_EQ(code_of([&] { dla::verify_4lambda_identity(pc({{"XI", 1}, {"IX", 1}}), pc({{"ZI", 1}})); }),
            dla::ErrorCode::kPreconditionFailed);
}

TEST(RandomSets, ConnectedAndSeeded) {
  std::mt19937_64 a(77), b(77);
  const auto s1 = dla::random_connected_pauli_set(3, 4, a);
  const auto s2 = dla::random_connected_pauli_set(3, 4, b);
  ASSERT_EQ(s1.size(), 4u);
  for (std::size_t k = 0; k < s1.size(); ++k) {
    EXPECT_EQ(s1[k].to_string(), s2[k].to_string());
    EXPECT_TRUE(s1[k].is_single_term());
  }
  EXPECT_NO_THROW(dla::GeneratorSpec::from_pauli(s1));
}

}  // namespace
