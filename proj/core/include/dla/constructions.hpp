#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dla/dense_operator.hpp"
#include "dla/error.hpp"
#include "dla/pauli.hpp"
#include "dla/tolerance.hpp"

namespace dla {

/// A validated generator set on one backend. Exactly one of `pauli` and
/// `dense` is populated.
class GeneratorSpec {
 public:
  GeneratorSpec() = default;

  /// Both factories validate: non-empty, traceless, anti-Hermitian,
  /// linearly independent, consistent sizes.
  static GeneratorSpec from_pauli(std::vector<PauliCombination> generators,
                                  std::string family_tag = {},
                                  const TolerancePolicy& policy = {});
  static GeneratorSpec from_dense(std::vector<DenseOperator> generators,
                                  std::string family_tag = {},
                                  const TolerancePolicy& policy = {});

  bool is_pauli() const { return !pauli_.empty(); }
  std::size_t size() const { return is_pauli() ? pauli_.size() : dense_.size(); }
  std::size_t qubit_count() const { return qubits_; }
  const std::string& family_tag() const { return family_tag_; }
  void set_family_tag(std::string tag) { family_tag_ = std::move(tag); }

  std::span<const PauliCombination> pauli() const { return pauli_; }
  std::span<const DenseOperator> dense() const { return dense_; }

  /// Dense copy of the generators (converting Pauli sums when needed).
  std::vector<DenseOperator> dense_generators(int qubit_cap = kDenseQubitCap) const;
  /// The same set on the dense backend.
  GeneratorSpec to_dense_spec() const;

  /// Calls f(std::span<const PauliCombination>) or f(std::span<const DenseOperator>).
  template <class F>
  decltype(auto) visit(F&& f) const {
    if (is_pauli()) return f(pauli());
    return f(dense());
  }

 private:
  std::size_t qubits_ = 0;
  std::vector<PauliCombination> pauli_;
  std::vector<DenseOperator> dense_;
  std::string family_tag_;
};

/// Number of distinct eigenvalues of a Hermitian operator.
std::size_t distinct_eigenvalue_count(const DenseOperator& h, const TolerancePolicy& policy = {});

/// {A_i (x) chi^j : 0 <= j < q}, ordered power-major (all generators for
/// j = 0 first). chi^0 is the identity on the ancilla. Requires chi
/// Hermitian with K >= 2 distinct eigenvalues and 1 <= q <= K.
GeneratorSpec extend_naive(const GeneratorSpec& spec, const DenseOperator& chi, std::size_t q,
                           const TolerancePolicy& policy = {});

/// {A_i (x) I : all i} followed by {A_i (x) chi : i in subset}; indices are
/// zero-based and must be distinct.
GeneratorSpec extend_subset(const GeneratorSpec& spec, const DenseOperator& chi,
                            std::span<const std::size_t> subset,
                            const TolerancePolicy& policy = {});

struct TensorQOptions {
  /// Reject Q with a non-zero pair lambda, -lambda.
  bool require_sign_unambiguous = true;
  /// Reject Q with a zero eigenvalue.
  bool require_nonzero_spectrum = true;
};

/// {A_i (x) Q}. Throws kSignAmbiguous or kPreconditionFailed per options,
/// and kInvalidArgument for Q = 0.
GeneratorSpec tensor_q(const GeneratorSpec& spec, const DenseOperator& q,
                       const TensorQOptions& options = {}, const TolerancePolicy& policy = {});

// ---------------------------------------------------------------------------
// Graph-derived QAOA families
// ---------------------------------------------------------------------------

/// Simple undirected graph with zero-based vertices.
struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws kMalformedInput unless simple, in range, >= 2 vertices, >= 1 edge.
  void validate() const;

  static Graph cycle(std::size_t n);
  static Graph complete(std::size_t n);
  static Graph path(std::size_t n);
  /// "cycle4", "complete3", "path5", "K3" (complete) or "C4" (cycle).
  static Graph named(std::string_view name);
};

enum class QaoaFamily { kMaxCut, kSnEquivariant };

std::string_view to_string(QaoaFamily family);
QaoaFamily parse_qaoa_family(std::string_view text);

/// kMaxCut: {sum_j iX_j, sum_(j,k) iZ_jZ_k}.
/// kSnEquivariant: {sum_j iX_j, sum_j iY_j, sum_(j,k) iZ_jZ_k}.
GeneratorSpec qaoa_generators(const Graph& graph, QaoaFamily family);

// ---------------------------------------------------------------------------
// Cyclicity
// ---------------------------------------------------------------------------

struct PairExtension {
  std::size_t i = 0;
  std::size_t j = 0;
  /// Extension generator indices (A_k1 innermost) such that
  /// [A_kl,[...,[A_k1,[A_j,A_i]]]] is proportional to [A_j,A_i].
  std::optional<std::vector<std::size_t>> extension;

  std::optional<std::size_t> length() const {
    if (!extension) return std::nullopt;
    return extension->size();
  }
};

struct CyclicityReport {
  std::vector<PairExtension> noncommuting_pairs;
  /// lcm of all extension lengths; absent when some pair is inconclusive or
  /// there are no noncommuting pairs.
  std::optional<std::size_t> common_cycle_length;
  std::size_t search_depth_cap = 0;

  /// Every noncommuting pair has a stable extension within the cap
  /// (vacuously true without noncommuting pairs).
  bool cyclic() const;
  /// Some pair had no extension within the cap: not a negative result.
  bool inconclusive() const { return !cyclic(); }
};

inline constexpr std::size_t kDefaultExtensionLength = 6;

/// Shortest-first, lexicographic search for stable extensions of every
/// noncommuting pair (i < j).
CyclicityReport detect_cyclic(const GeneratorSpec& spec,
                              std::size_t max_extension_length = kDefaultExtensionLength,
                              const TolerancePolicy& policy = {});

struct FourLambdaResult {
  bool holds = false;
  double lambda = 0.0;
  /// |[a,[a,[a,b]]] - 4 lambda [a,b]| / |[a,b]| (0 when [a,b] = 0).
  double relative_residual = 0.0;
};

/// Checks [a,[a,[a,b]]] = 4 lambda_a [a,b] where a^2 = lambda_a I, lambda_a < 0.
/// Throws kPreconditionFailed when a^2 is not a negative scalar.
FourLambdaResult verify_4lambda_identity(const DenseOperator& a, const DenseOperator& b,
                                         double tol = 1e-10);
FourLambdaResult verify_4lambda_identity(const PauliCombination& a, const PauliCombination& b,
                                         double tol = 1e-10);

// ---------------------------------------------------------------------------
// Seeded random inputs (property sweeps)
// ---------------------------------------------------------------------------

/// Uniform non-identity Pauli string.
PauliTerm random_pauli_term(std::size_t qubits, std::mt19937_64& rng);

/// Distinct Pauli strings with a connected anticommutation graph.
std::vector<PauliCombination> random_connected_pauli_set(std::size_t qubits, std::size_t count,
                                                         std::mt19937_64& rng);

/// Two independent generators on `qubits` qubits, each a random real
/// combination of one to three Pauli strings.
std::vector<PauliCombination> random_two_generator_set(std::size_t qubits, std::mt19937_64& rng);

}  // namespace dla
