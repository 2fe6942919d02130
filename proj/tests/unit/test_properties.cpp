// Seeded randomized checks of algebraic identities and of the closure engine
// against the independent dense oracle.

#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dla/closure.hpp"
#include "dla/constructions.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace {

using dla::PauliCombination;

PauliCombination random_combination(std::size_t qubits, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::vector<PauliCombination::Entry> e;
  const int n = count(rng);
  while (static_cast<int>(e.size()) < n) {
    auto t = dla::random_pauli_term(qubits, rng);
    if (!t.is_identity()) e.push_back({t, coeff(rng)});
  }
  return PauliCombination::from_entries(qubits, e);
}

TEST(Properties, BracketIsBilinearAntisymmetricAndJacobi) {
  std::mt19937_64 rng(100);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_combination(3, rng), b = random_combination(3, rng), c = random_combination(3, rng);
    const double s = 0.75;
    EXPECT_LT(dla::hs_norm(dla::commutator(a, b) + dla::commutator(b, a)), 1e-12);
    EXPECT_LT(dla::hs_norm(dla::commutator(a + s * b, c) - dla::commutator(a, c) - s * dla::commutator(b, c)), 1e-11);
    const auto jac = dla::commutator(a, dla::commutator(b, c)) + dla::commutator(b, dla::commutator(c, a)) +
                     dla::commutator(c, dla::commutator(a, b));
    EXPECT_LT(dla::hs_norm(jac), 1e-10);
  }
}

TEST(Properties, ClosureMatchesDenseOracle) {
  std::mt19937_64 rng(200);
  for (int t = 0; t < 30; ++t) {
    const std::size_t qubits = 2 + static_cast<std::size_t>(t % 2);
    std::vector<PauliCombination> g;
    const std::size_t count = 2 + static_cast<std::size_t>(t % 3);
    while (g.size() < count) {
      g.push_back(random_combination(qubits, rng));
      try {
        dla::validate_generators<PauliCombination>(g);
      } catch (const dla::Error&) {
        g.pop_back();
      }
    }
    const auto spec = dla::GeneratorSpec::from_pauli(g);
    const auto r = testing_support::analyze(spec);
    const auto o = testing_support::oracle_dims(spec);
    EXPECT_EQ(r.dim_g, o.g) << "set " << t;
    EXPECT_EQ(r.dim_gg, o.gg) << "set " << t;
    EXPECT_EQ(r.dim_center, o.center) << "set " << t;
    EXPECT_EQ(r.dim_spanA_cap_gg, o.span_cap_gg) << "set " << t;
    EXPECT_TRUE(r.reductive_holds());
    EXPECT_TRUE(r.center_identity_holds());
  }
}

TEST(Properties, GeneratorOrderDoesNotMatter) {
  std::mt19937_64 rng(300);
  for (int t = 0; t < 10; ++t) {
    auto g = dla::random_connected_pauli_set(3, 4, rng);
    const auto a = dla::analyze<PauliCombination>(g);
    std::shuffle(g.begin(), g.end(), rng);
    const auto b = dla::analyze<PauliCombination>(g);
    EXPECT_EQ(a.dim_g, b.dim_g);
    EXPECT_EQ(a.dim_gg, b.dim_gg);
    EXPECT_EQ(a.dim_center, b.dim_center);
  }
}

TEST(Properties, DenseBackendAgreesOnRandomSets) {
  std::mt19937_64 rng(400);
  for (int t = 0; t < 10; ++t) {
    const auto spec = dla::GeneratorSpec::from_pauli(dla::random_two_generator_set(2, rng));
    const auto rp = testing_support::analyze(spec);
    const auto rd = testing_support::analyze(spec.to_dense_spec());
    EXPECT_EQ(rp.dim_g, rd.dim_g);
    EXPECT_EQ(rp.dim_gg, rd.dim_gg);
    EXPECT_EQ(rp.dim_center, rd.dim_center);
  }
}

TEST(Properties, CenterCommutesWithEverything) {
  std::mt19937_64 rng(500);
  for (int t = 0; t < 10; ++t) {
    const auto g = dla::random_two_generator_set(2, rng);
    const auto an = dla::analyze_full<PauliCombination>(g);
    for (const auto& z : an.z.elements)
      for (const auto& e : an.g.elements) EXPECT_LT(dla::hs_norm(dla::commutator(z, e)), 1e-9);
    EXPECT_LT(dla::containment_residual<PauliCombination>(an.gg.elements, an.g.elements), 1e-8);
  }
}

}  // namespace
