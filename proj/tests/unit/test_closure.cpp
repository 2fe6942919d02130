#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dla/closure.hpp"
#include "dla/constructions.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace {

using dla::DenseOperator;
using dla::PauliCombination;
using testing_support::pc;

std::vector<PauliCombination> gens(std::initializer_list<testing_support::Terms> ts) {
  std::vector<PauliCombination> out;
  for (const auto& t : ts) out.push_back(pc(t));
  return out;
}

TEST(LieClosure, SmallExamples) {
  EXPECT_EQ(dla::lie_closure<PauliCombination>(gens({{{"X", 1}}, {{"Z", 1}}})).size(), 3u);
  const auto ab = gens({{{"ZI", 1}}, {{"IZ", 1}}});
  const auto basis = dla::lie_closure<PauliCombination>(ab);
  EXPECT_EQ(basis.size(), 2u);
  EXPECT_EQ(basis.rounds, 1u);
}

TEST(LieClosure, ElementsAreOrthonormalAndProvenanceEvaluates) {
  const auto g = gens({{{"XI", 1}}, {{"ZI", 1}, {"IZ", 1}}, {{"IX", 0.5}}});
  const auto basis = dla::lie_closure<PauliCombination>(g);
  const auto expect = testing_support::oracle_dims(dla::GeneratorSpec::from_pauli(g));
  ASSERT_EQ(basis.size(), expect.g);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b)
      EXPECT_NEAR(dla::hs_inner(basis.elements[a], basis.elements[b]), a == b ? 1.0 : 0.0, 1e-10);
  ASSERT_EQ(basis.provenance.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto v = dla::evaluate_sequence<PauliCombination>(g, basis.provenance[k].sequence);
    EXPECT_TRUE(dla::proportional(v, basis.values[k])) << basis.provenance[k].to_string();
  }
}

TEST(LieClosure, MaxCutCycleFourMatchesBruteForce) {
  // The ⊕ su(2) count 3(n-1) = 9 does not survive brute force: the oracle
  // finds an 11-dimensional algebra, and that value is authoritative.
  const auto spec = dla::qaoa_generators(dla::Graph::cycle(4), dla::QaoaFamily::kMaxCut);
  const auto expect = testing_support::oracle_dims(spec);
  const auto r = testing_support::analyze(spec);
  EXPECT_EQ(r.dim_g, expect.g);
  EXPECT_EQ(r.dim_gg, expect.gg);
  EXPECT_EQ(r.dim_center, expect.center);
  EXPECT_EQ(expect.g, 11u);
}

TEST(LieClosure, CapsAreReported) {
  const auto g = gens({{{"XI", 1}}, {{"ZI", 1}, {"IZ", 1}}, {{"IX", 1}}});
  dla::ClosureCaps caps;
  caps.max_dim = 4;
  const auto basis = dla::lie_closure<PauliCombination>(g, caps);
  EXPECT_TRUE(basis.capped);
  EXPECT_LE(basis.size(), 4u);
  const auto r = dla::analyze<PauliCombination>(g, caps);
  EXPECT_TRUE(r.capped);
  EXPECT_FALSE(r.reductive_holds());
}

TEST(LieClosure, RejectsInvalidGenerators) {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const dla::Error& e) {
      return e.code();
    }
    return dla::ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code_of([] { dla::validate_generators<PauliCombination>(gens({{{"XI", 1}}, {{"XI", 2}}})); }),
            dla::ErrorCode::kDependentGenerators);
  EXPECT_EQ(code_of([] { dla::validate_generators<PauliCombination>(gens({{{"II", 1}}})); }),
            dla::ErrorCode::kNotTraceless);
  EXPECT_EQ(code_of([] { dla::validate_generators<PauliCombination>(gens({{{"X", 1}}, {{"ZZ", 1}}})); }),
            dla::ErrorCode::kDimensionMismatch);
  const std::vector<DenseOperator> herm{DenseOperator(oracle::pauli("X"))};
  EXPECT_EQ(code_of([&] { dla::validate_generators<DenseOperator>(herm); }),
            dla::ErrorCode::kNotAntiHermitian);
}

TEST(AllPairsOracle, AgreesWithFrontierOnSmallSets) {
  for (const auto& g : {gens({{{"X", 1}}, {{"Z", 1}}}), gens({{{"ZI", 1}}, {{"IZ", 1}}}),
                        gens({{{"XX", 1}}, {{"ZI", 1}}, {{"IY", 1}}})}) {
    const auto a = dla::lie_closure<PauliCombination>(g);
    const auto b = dla::all_pairs_closure_oracle<PauliCombination>(g);
    EXPECT_EQ(a.size(), b.size());
    EXPECT_LT(dla::containment_residual<PauliCombination>(a.elements, b.elements), 1e-8);
    EXPECT_LT(dla::containment_residual<PauliCombination>(b.elements, a.elements), 1e-8);
  }
}

TEST(CommutatorSubalgebraAndCenter, HandExamples) {
  {
    const auto g = gens({{{"X", 1}}, {{"Z", 1}}});
    const auto b = dla::lie_closure<PauliCombination>(g);
    EXPECT_EQ(dla::commutator_subalgebra<PauliCombination>(b, g).size(), 3u);
    EXPECT_EQ(dla::center<PauliCombination>(b, g).size(), 0u);
  }
  {
    const auto g = gens({{{"ZI", 1}}, {{"IZ", 1}}});
    const auto b = dla::lie_closure<PauliCombination>(g);
    EXPECT_EQ(dla::commutator_subalgebra<PauliCombination>(b, g).size(), 0u);
    EXPECT_EQ(dla::center<PauliCombination>(b, g).size(), 2u);
  }
  {
    const auto g = gens({{{"XI", 1}}, {{"ZI", 1}, {"IZ", 1}}});
    const auto b = dla::lie_closure<PauliCombination>(g);
    EXPECT_EQ(dla::commutator_subalgebra<PauliCombination>(b, g).size(), 3u);
    const auto z = dla::center<PauliCombination>(b, g);
    ASSERT_EQ(z.size(), 1u);
    EXPECT_TRUE(dla::proportional(z.elements[0], pc({{"IZ", 1}})));
  }
}

TEST(Analyze, ReportsHandExamples) {
  struct Case {
    std::vector<PauliCombination> g;
    std::size_t dim_g, dim_gg, dim_center, cap;
  };
  const std::vector<Case> cases{
      {gens({{{"X", 1}}, {{"Z", 1}}}), 3, 3, 0, 2},
      {gens({{{"ZI", 1}}, {{"IZ", 1}}}), 2, 0, 2, 0},
      {gens({{{"XI", 1}}, {{"ZI", 1}, {"IZ", 1}}}), 4, 3, 1, 1},
  };
  for (const auto& c : cases) {
    const auto r = dla::analyze<PauliCombination>(c.g);
    EXPECT_EQ(r.dim_g, c.dim_g);
    EXPECT_EQ(r.dim_gg, c.dim_gg);
    EXPECT_EQ(r.dim_center, c.dim_center);
    EXPECT_EQ(r.dim_spanA_cap_gg, c.cap);
    EXPECT_EQ(r.dim_gg_all_pairs, c.dim_gg);
    EXPECT_TRUE(r.reductive_holds());
    EXPECT_TRUE(r.center_identity_holds());
  }
}

TEST(Analyze, DenseAndPauliBackendsAgree) {
  const auto spec = dla::qaoa_generators(dla::Graph::complete(3), dla::QaoaFamily::kSnEquivariant);
  const auto rp = testing_support::analyze(spec);
  const auto rd = testing_support::analyze(spec.to_dense_spec());
  EXPECT_EQ(rp.dim_g, rd.dim_g);
  EXPECT_EQ(rp.dim_gg, rd.dim_gg);
  EXPECT_EQ(rp.dim_center, rd.dim_center);
  const auto expect = testing_support::oracle_dims(spec);
  EXPECT_EQ(rp.dim_g, expect.g);
  EXPECT_EQ(rp.dim_center, expect.center);
}

TEST(Analyze, RandomDenseTwoQubitPairIsFull) {
  std::mt19937_64 rng(2024);
  const std::vector<DenseOperator> g{dla::random_traceless_anti_hermitian(4, rng),
                                     dla::random_traceless_anti_hermitian(4, rng)};
  const auto r = dla::analyze<DenseOperator>(g);
  EXPECT_EQ(r.dim_g, 15u);
  EXPECT_EQ(r.dim_center, 0u);
}

TEST(Analyze, RecombiningGeneratorsKeepsTheAlgebra) {
  // Replacing generators by invertible real combinations cannot change the
  // algebra they generate.
  const auto g = gens({{{"XI", 1}}, {{"ZI", 1}, {"IZ", 1}}, {{"IY", 1}}});
  const std::vector<PauliCombination> h{g[0] + g[1], g[1] - 2.0 * g[2], g[0] + g[2]};
  const auto a = dla::lie_closure<PauliCombination>(g);
  const auto b = dla::lie_closure<PauliCombination>(h);
  EXPECT_EQ(a.size(), b.size());
  EXPECT_LT(dla::containment_residual<PauliCombination>(a.elements, b.elements), 1e-8);
}

TEST(JointDimension, CountsUnion) {
  const auto a = gens({{{"XI", 1}}, {{"ZI", 1}}});
  const auto b = gens({{{"XI", 1}}, {{"IZ", 1}}});
  EXPECT_EQ(dla::joint_dimension<PauliCombination>(a, b), 3u);
}

}  // namespace
