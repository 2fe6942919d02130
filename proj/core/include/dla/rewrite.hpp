#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dla/error.hpp"

namespace dla {

/// Binary commutator expression over generator symbols, e.g. [[A,B],[C,D]].
/// Leaves hold symbol indices; names live in a separate symbol table.
class CommutatorTree {
 public:
  static CommutatorTree leaf(std::size_t symbol);
  static CommutatorTree bracket(CommutatorTree left, CommutatorTree right);

  /// Parses "[A,[B,C]]"-style text. Identifiers are [A-Za-z_][A-Za-z0-9_]*;
  /// new names are appended to `symbols`, whose positions are the indices.
  static CommutatorTree parse(std::string_view text, std::vector<std::string>& symbols);

  bool is_leaf() const { return node_ == nullptr; }
  std::size_t symbol() const { return symbol_; }
  const CommutatorTree& left() const;
  const CommutatorTree& right() const;

  std::size_t leaf_count() const;
  /// True for a leaf or [x, T] with x a leaf and T right-nested.
  bool is_right_nested() const;

  std::string to_string(std::span<const std::string> symbols) const;

 private:
  struct Node;
  std::size_t symbol_ = 0;
  std::shared_ptr<const Node> node_;
};

struct CommutatorTree::Node {
  CommutatorTree left;
  CommutatorTree right;
};

/// coefficient * [X_sk, [..., [X_s1, X_s0]]], sequence innermost first (the
/// same convention as closure provenance).
struct RightNestedTerm {
  double coefficient = 0.0;
  std::vector<std::size_t> sequence;

  std::string to_string(std::span<const std::string> symbols) const;
};

/// Rewrites an arbitrary commutator tree as a linear combination of
/// right-nested commutators, by induction on the right operand with the
/// Jacobi identity [P,[A,Q]] = [A,[P,Q]] - [[A,P],Q]. Like terms are merged
/// and the innermost pair is normalized using antisymmetry. Trees that are
/// already right-nested come back unchanged up to that normalization.
std::vector<RightNestedTerm> right_nested_rewrite(const CommutatorTree& tree);

/// The single Jacobi step [P,[A,B]] = -[A,[B,P]] + [B,[A,P]] for a
/// right-nested P and leaves A, B. Throws kMalformedInput on any other shape.
std::vector<RightNestedTerm> jacobi_rewrite_step(const CommutatorTree& tree);

std::string to_string(std::span<const RightNestedTerm> terms,
                      std::span<const std::string> symbols);

/// Evaluates a tree on concrete operators (symbol k -> values[k]).
template <class Op>
Op evaluate(const CommutatorTree& tree, std::span<const Op> values) {
  if (tree.is_leaf()) {
    if (tree.symbol() >= values.size())
      fail(ErrorCode::kInvalidArgument, "evaluate: no value for symbol " +
                                            std::to_string(tree.symbol()));
    return values[tree.symbol()];
  }
  return commutator(evaluate<Op>(tree.left(), values), evaluate<Op>(tree.right(), values));
}

/// Evaluates sum_k c_k [X_sk,[...]] on concrete operators.
template <class Op>
Op evaluate(std::span<const RightNestedTerm> terms, std::span<const Op> values, const Op& zero) {
  Op out = zero;
  for (const RightNestedTerm& t : terms) {
    if (t.sequence.empty()) fail(ErrorCode::kInvalidArgument, "evaluate: empty sequence");
    for (std::size_t s : t.sequence)
      if (s >= values.size())
        fail(ErrorCode::kInvalidArgument, "evaluate: no value for symbol " + std::to_string(s));
    Op v = values[t.sequence.front()];
    for (std::size_t j = 1; j < t.sequence.size(); ++j) v = commutator(values[t.sequence[j]], v);
    axpy(out, t.coefficient, v);
  }
  return out;
}

}  // namespace dla
