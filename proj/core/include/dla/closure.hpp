#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dla/dense_operator.hpp"
#include "dla/numeric.hpp"
#include "dla/pauli.hpp"
#include "dla/tolerance.hpp"

namespace dla {

/// Where a basis element came from.
///
/// `sequence` is a generator-index sequence (s0, s1, ..., sk), innermost
/// first, whose value is val = [A_sk, [..., [A_s1, A_s0]]]; a length-one
/// sequence is the generator itself. The element and val(sequence) are tied
/// by a triangular change of basis: val lies in the span of the elements up
/// to and including this one, with a non-zero component along it.
///
/// `pair` is set instead for elements produced by the all-pairs oracle
/// ([e_p, e_q] of earlier basis elements). Center elements carry neither.
struct Provenance {
  std::vector<std::size_t> sequence;
  std::optional<std::pair<std::size_t, std::size_t>> pair;

  bool is_generator() const { return sequence.size() == 1 && !pair; }
  /// A right-nested sequence of length >= 2.
  bool is_proper() const { return sequence.size() >= 2; }
  std::string to_string() const;
};

template <class Op>
struct LieBasis {
  std::vector<Op> elements;  // hs-orthonormal
  std::vector<Provenance> provenance;
  /// Unit-norm raw bracket value behind each element (val(sequence) for
  /// closures, [v_p, v_q] for the oracle); empty for derived bases. New
  /// candidates are formed from these rather than from `elements`, whose
  /// rounding errors would otherwise be amplified round after round.
  std::vector<Op> values;
  bool capped = false;
  std::size_t rounds = 0;

  std::size_t size() const { return elements.size(); }
  std::span<const Op> view() const { return elements; }
};

struct ClosureCaps {
  /// 0 selects the ambient bound: 4^n - 1 for n qubits, d^2 - 1 for dense.
  std::size_t max_dim = 0;
  std::size_t max_rounds = 64;
};

struct ClosureReport {
  std::size_t generator_count = 0;
  std::size_t dim_g = 0;
  std::size_t dim_gg = 0;
  std::size_t dim_center = 0;
  /// dim(span(generators) ∩ [g,g]).
  std::size_t dim_spanA_cap_gg = 0;
  /// Largest relative distance of a basis element of g from [g,g] ⊕ Z(g).
  double reductive_residual = 0.0;
  /// Largest relative distance of a basis element of g from span(generators) + [g,g].
  double decomposition_residual = 0.0;
  /// Dimension of span{[e_p, e_q]}, the all-pairs route to [g,g].
  std::size_t dim_gg_all_pairs = 0;
  bool capped = false;
  std::size_t rounds = 0;
  std::vector<std::string> warnings;

  /// dim_g = dim_gg + dim_center with a small reductive residual.
  bool reductive_holds(double tol = 1e-8) const {
    return !capped && dim_g == dim_gg + dim_center && reductive_residual < tol;
  }
  /// dim_center + dim(span(A) ∩ [g,g]) = L.
  bool center_identity_holds() const {
    return !capped && dim_center + dim_spanA_cap_gg == generator_count;
  }
};

/// The three bases behind a report, for callers that need more than numbers.
template <class Op>
struct Analysis {
  LieBasis<Op> g;
  LieBasis<Op> gg;
  LieBasis<Op> z;
  ClosureReport report;
};

/// Checks that generators are non-empty, consistent in size, traceless,
/// anti-Hermitian and linearly independent; throws Error otherwise.
template <class Op>
void validate_generators(std::span<const Op> generators, const TolerancePolicy& policy = {});

/// Ambient bound on the dimension of any algebra generated on this space.
std::size_t ambient_dimension(const PauliCombination& sample);
std::size_t ambient_dimension(const DenseOperator& sample);

/// val(sequence) for a generator-index sequence, innermost first.
template <class Op>
Op evaluate_sequence(std::span<const Op> generators, std::span<const std::size_t> sequence);

/// Frontier closure: each round commutes every generator with every element
/// added in the previous round, in (generator, element) order.
template <class Op>
LieBasis<Op> lie_closure(std::span<const Op> generators, const ClosureCaps& caps = {},
                         const TolerancePolicy& policy = {});

/// Reference closure that commutes all pairs of basis elements.
template <class Op>
LieBasis<Op> all_pairs_closure_oracle(std::span<const Op> generators, const ClosureCaps& caps = {},
                                      const TolerancePolicy& policy = {});

/// [g,g] as span{[A_i, e_k]} (right-nested provenance), cross-checked
/// against span{[e_p, e_q]}; throws kPreconditionFailed if the two disagree
/// and kCappedBasis on a capped input.
template <class Op>
LieBasis<Op> commutator_subalgebra(const LieBasis<Op>& basis, std::span<const Op> generators,
                                   const TolerancePolicy& policy = {},
                                   std::size_t* all_pairs_dim = nullptr);

/// Z(g): elements of span(basis) commuting with every generator.
template <class Op>
LieBasis<Op> center(const LieBasis<Op>& basis, std::span<const Op> generators,
                    const TolerancePolicy& policy = {});

/// Largest relative distance of a member of `of` from span(`into`), where
/// `into` is orthonormal.
template <class Op>
double containment_residual(std::span<const Op> of, std::span<const Op> into,
                            const TolerancePolicy& policy = {});

/// dim span(a ∪ b) for arbitrary (not necessarily orthonormal) lists.
template <class Op>
std::size_t joint_dimension(std::span<const Op> a, std::span<const Op> b,
                            const TolerancePolicy& policy = {});

template <class Op>
Analysis<Op> analyze_full(std::span<const Op> generators, const ClosureCaps& caps = {},
                          const TolerancePolicy& policy = {});

template <class Op>
ClosureReport analyze(std::span<const Op> generators, const ClosureCaps& caps = {},
                      const TolerancePolicy& policy = {}) {
  return analyze_full<Op>(generators, caps, policy).report;
}

#define DLA_CLOSURE_EXTERN(Op)                                                                  \
  extern template void validate_generators<Op>(std::span<const Op>, const TolerancePolicy&);    \
  extern template Op evaluate_sequence<Op>(std::span<const Op>, std::span<const std::size_t>);  \
  extern template LieBasis<Op> lie_closure<Op>(std::span<const Op>, const ClosureCaps&,         \
                                               const TolerancePolicy&);                         \
  extern template LieBasis<Op> all_pairs_closure_oracle<Op>(                                    \
      std::span<const Op>, const ClosureCaps&, const TolerancePolicy&);                         \
  extern template LieBasis<Op> commutator_subalgebra<Op>(                                       \
      const LieBasis<Op>&, std::span<const Op>, const TolerancePolicy&, std::size_t*);          \
  extern template LieBasis<Op> center<Op>(const LieBasis<Op>&, std::span<const Op>,             \
                                          const TolerancePolicy&);                              \
  extern template double containment_residual<Op>(std::span<const Op>, std::span<const Op>,     \
                                                  const TolerancePolicy&);                      \
  extern template std::size_t joint_dimension<Op>(std::span<const Op>, std::span<const Op>,     \
                                                  const TolerancePolicy&);                      \
  extern template Analysis<Op> analyze_full<Op>(std::span<const Op>, const ClosureCaps&,        \
                                                const TolerancePolicy&);

DLA_CLOSURE_EXTERN(PauliCombination)
DLA_CLOSURE_EXTERN(DenseOperator)
#undef DLA_CLOSURE_EXTERN

}  // namespace dla
