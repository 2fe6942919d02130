#include <random>

#include <gtest/gtest.h>

#include "dla/serialization.hpp"
#include "helpers.hpp"

namespace {

using dla::Json;

dla::ErrorCode code_of(const Json& j) {
  try {
    dla::spec_from_json(j);
  } catch (const dla::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error for " << j.dump();
  return dla::ErrorCode::kInvalidArgument;
}

TEST(Coefficients, RoundTripBitExact) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) / 7.0;
    EXPECT_EQ(dla::parse_coefficient(Json(dla::format_coefficient(v))), v);
  }
  EXPECT_EQ(dla::parse_coefficient(Json("+1.5")), 1.5);
  EXPECT_EQ(dla::parse_coefficient(Json(2)), 2.0);
  EXPECT_THROW(dla::parse_coefficient(Json("1.5x")), dla::Error);
  EXPECT_THROW(dla::parse_coefficient(Json("nan")), dla::Error);
}

TEST(Spec, PauliRoundTrip) {
  const auto spec = dla::qaoa_generators(dla::Graph::cycle(3), dla::QaoaFamily::kMaxCut);
  const Json j = dla::spec_to_json(spec);
  const auto back = dla::spec_from_json(j);
  EXPECT_TRUE(back.is_pauli());
  EXPECT_EQ(back.family_tag(), spec.family_tag());
  EXPECT_EQ(dla::spec_to_json(back).dump(), j.dump());
}

TEST(Spec, DenseRoundTrip) {
  std::mt19937_64 rng(3);
  const auto spec = dla::GeneratorSpec::from_dense(
      {dla::random_traceless_anti_hermitian(4, rng), dla::random_traceless_anti_hermitian(4, rng)});
  const auto back = dla::spec_from_json(dla::spec_to_json(spec));
  ASSERT_FALSE(back.is_pauli());
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(back.dense()[k].matrix(), spec.dense()[k].matrix());
}

TEST(Spec, MixedInputBecomesDense) {
  const Json j = Json::parse(R"({"qubits": 1, "generators": [
      {"pauli_sum": [{"string": "X", "coeff": "1"}]},
      {"dense": [[["1", "0"], ["0", "0"]], [["0", "0"], ["-1", "0"]]]}]})");
  // The dense entry is Hermitian, so validation rejects it with its own code.
  EXPECT_EQ(code_of(j), dla::ErrorCode::kNotAntiHermitian);
  const Json ok = Json::parse(R"({"qubits": 1, "generators": [
      {"pauli_sum": [{"string": "X", "coeff": "1"}]},
      {"dense": [[["0", "1"], ["0", "0"]], [["0", "0"], ["0", "-1"]]]}]})");
  const auto spec = dla::spec_from_json(ok);
  EXPECT_FALSE(spec.is_pauli());
  EXPECT_EQ(testing_support::analyze(spec).dim_g, 3u);
}

TEST(Spec, MalformedInputs) {
  EXPECT_EQ(code_of(Json::parse(R"({"qubits": 1, "generators": []})")), dla::ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of(Json::parse(R"({"generators": []})")), dla::ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of(Json::parse(R"({"qubits": 2, "generators": [{"pauli_sum": [{"string": "X", "coeff": "1"}]}]})")),
            dla::ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of(Json::parse(R"({"qubits": 1, "generators": [{"pauli_sum": [{"string": "Q", "coeff": "1"}]}]})")),
            dla::ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of(Json::parse(R"({"qubits": 1, "generators": [{"other": 1}]})")),
            dla::ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of(Json::parse(R"({"qubits": 1, "generators": [{"pauli_sum": [{"string": "X", "coeff": "1"}]},
                                                              {"pauli_sum": [{"string": "X", "coeff": "2"}]}]})")),
            dla::ErrorCode::kDependentGenerators);
}

TEST(Graph, RoundTripAndValidation) {
  const auto g = dla::Graph::complete(4);
  const auto back = dla::graph_from_json(dla::graph_to_json(g));
  EXPECT_EQ(back.vertices, 4u);
  EXPECT_EQ(back.edges, g.edges);
  EXPECT_THROW(dla::graph_from_json(Json::parse(R"({"vertices": 3, "edges": [[0, 1]]})")), dla::Error);
  EXPECT_THROW(dla::graph_from_json(Json::parse(R"({"vertices": 3, "edges": []})")), dla::Error);
}

TEST(Reports, CyclicityUsesOneBasedIndices) {
  const Json j = dla::cyclicity_to_json(dla::detect_cyclic(testing_support::xz()));
  ASSERT_EQ(j["noncommuting_pairs"].size(), 1u);
  EXPECT_EQ(j["noncommuting_pairs"][0]["i"], 1);
  EXPECT_EQ(j["common_cycle_length"], 2);
  EXPECT_EQ(j["cyclic"], true);
}

}  // namespace
