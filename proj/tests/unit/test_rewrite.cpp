#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dla/dense_operator.hpp"
#include "dla/rewrite.hpp"

namespace {

using dla::CommutatorTree;
using dla::DenseOperator;

std::vector<DenseOperator> random_values(std::size_t n, std::mt19937_64& rng) {
  std::vector<DenseOperator> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(dla::random_traceless_anti_hermitian(4, rng));
  return out;
}

double mismatch(const CommutatorTree& tree, const std::vector<dla::RightNestedTerm>& terms,
                const std::vector<DenseOperator>& values) {
  const auto lhs = dla::evaluate<DenseOperator>(tree, values);
  const auto rhs = dla::evaluate<DenseOperator>(terms, values, DenseOperator::zero(4));
  return dla::hs_norm(lhs - rhs) / std::max(1.0, dla::hs_norm(lhs));
}

TEST(CommutatorTree, ParsesAndPrints) {
  std::vector<std::string> sym;
  const auto t = CommutatorTree::parse("[[A,B],[C,D]]", sym);
  EXPECT_EQ(sym, (std::vector<std::string>{"A", "B", "C", "D"}));
  EXPECT_EQ(t.leaf_count(), 4u);
  EXPECT_FALSE(t.is_right_nested());
  EXPECT_EQ(t.to_string(sym), "[[A,B],[C,D]]");
  EXPECT_TRUE(CommutatorTree::parse("[A,[B,C]]", sym).is_right_nested());
  EXPECT_THROW(CommutatorTree::parse("[A,B", sym), dla::Error);
  EXPECT_THROW(CommutatorTree::parse("[A B]", sym), dla::Error);
}

TEST(JacobiStep, MatchesIdentity) {
  std::vector<std::string> sym;
  const auto t = CommutatorTree::parse("[C,[A,B]]", sym);
  const auto terms = dla::jacobi_rewrite_step(t);
  ASSERT_EQ(terms.size(), 2u);
  std::mt19937_64 rng(5);
  EXPECT_LT(mismatch(t, terms, random_values(sym.size(), rng)), 1e-10);
  EXPECT_THROW(dla::jacobi_rewrite_step(CommutatorTree::parse("[[A,B],C]", sym)), dla::Error);
}

TEST(RightNestedRewrite, AlreadyNestedIsUnchanged) {
  std::vector<std::string> sym;
  const auto t = CommutatorTree::parse("[A,[B,C]]", sym);
  const auto terms = dla::right_nested_rewrite(t);
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_DOUBLE_EQ(std::abs(terms[0].coefficient), 1.0);
  std::mt19937_64 rng(6);
  EXPECT_LT(mismatch(t, terms, random_values(sym.size(), rng)), 1e-10);
}

TEST(RightNestedRewrite, FourLeafProductOfBrackets) {
  std::vector<std::string> sym;
  const auto t = CommutatorTree::parse("[[A,B],[C,D]]", sym);
  const auto terms = dla::right_nested_rewrite(t);
  EXPECT_FALSE(terms.empty());
  for (const auto& term : terms) EXPECT_EQ(term.sequence.size(), 4u);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial)
    EXPECT_LT(mismatch(t, terms, random_values(sym.size(), rng)), 1e-10);
}

TEST(RightNestedRewrite, RepeatedSymbolsAndLeaves) {
  std::vector<std::string> sym;
  std::mt19937_64 rng(8);
  for (const char* text : {"A", "[A,B]", "[[A,B],A]", "[[A,B],[A,B]]", "[[[A,B],C],[A,[B,C]]]"}) {
    const auto t = CommutatorTree::parse(text, sym);
    const auto terms = dla::right_nested_rewrite(t);
    EXPECT_LT(mismatch(t, terms, random_values(std::max<std::size_t>(sym.size(), 3), rng)), 1e-10)
        << text;
  }
}

}  // namespace
