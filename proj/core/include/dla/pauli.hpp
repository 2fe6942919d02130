#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dla/dense_operator.hpp"
#include "dla/tolerance.hpp"

namespace dla {

/// Fixed-length bit vector. The first 64 bits live inline so that the common
/// n <= 64 case never allocates; longer vectors spill into `tail_`.
class PackedBits {
 public:
  PackedBits() = default;
  explicit PackedBits(std::size_t nbits);
  /// Bits of `word` on nbits <= 64 positions.
  static PackedBits from_word(std::size_t nbits, std::uint64_t word) {
    PackedBits b;
    b.nbits_ = nbits;
    b.head_ = nbits >= 64 ? word : (word & ((std::uint64_t{1} << nbits) - 1));
    return b;
  }

  std::size_t size() const { return nbits_; }
  std::size_t word_count() const { return (nbits_ + 63) / 64; }
  std::uint64_t word(std::size_t w) const { return w == 0 ? head_ : tail_[w - 1]; }

  bool test(std::size_t bit) const;
  void set(std::size_t bit, bool value);
  bool any() const;
  int popcount() const;

  /// popcount(this & other); both operands must have equal length.
  int popcount_and(const PackedBits& other) const {
    int c = std::popcount(head_ & other.head_);
    for (std::size_t k = 0; k < tail_.size(); ++k) c += std::popcount(tail_[k] & other.tail_[k]);
    return c;
  }

  PackedBits& operator^=(const PackedBits& other) {
    if (nbits_ != other.nbits_) length_mismatch();
    head_ ^= other.head_;
    for (std::size_t k = 0; k < tail_.size(); ++k) tail_[k] ^= other.tail_[k];
    return *this;
  }
  friend PackedBits operator^(PackedBits a, const PackedBits& b) { return a ^= b; }
  friend PackedBits operator&(const PackedBits& a, const PackedBits& b);

  /// Bits of `this` followed by bits of `tail`.
  PackedBits concat(const PackedBits& tail) const;

  friend bool operator==(const PackedBits&, const PackedBits&) = default;
  friend std::strong_ordering operator<=>(const PackedBits& a, const PackedBits& b) {
    if (auto c = a.nbits_ <=> b.nbits_; c != 0) return c;
    if (auto c = a.head_ <=> b.head_; c != 0) return c;
    for (std::size_t k = 0; k < a.tail_.size(); ++k)
      if (auto c = a.tail_[k] <=> b.tail_[k]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  [[noreturn]] static void length_mismatch();
  std::uint64_t& word_ref(std::size_t w) { return w == 0 ? head_ : tail_[w - 1]; }

  std::size_t nbits_ = 0;
  std::uint64_t head_ = 0;
  std::vector<std::uint64_t> tail_;
};

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Hermitian n-qubit Pauli string in symplectic form: X on the bits of
/// x_mask, Z on the bits of z_mask, Y where both are set. The phase is
/// fixed by Y = iXZ, i.e. the string equals i^{|x&z|} X^x Z^z.
/// Qubit 0 is the leftmost character of the text form and the leading
/// tensor factor of the dense matrix.
class PauliTerm {
 public:
  PauliTerm() = default;
  explicit PauliTerm(std::size_t qubits) : x_(qubits), z_(qubits) {}

  /// Parses a string over {I,X,Y,Z}, e.g. "XIZ".
  static PauliTerm from_string(std::string_view text);
  static PauliTerm single(std::size_t qubits, std::size_t qubit, Pauli p);
  static PauliTerm from_masks(PackedBits x, PackedBits z);

  std::size_t qubit_count() const { return x_.size(); }
  const PackedBits& x_mask() const { return x_; }
  const PackedBits& z_mask() const { return z_; }

  Pauli at(std::size_t qubit) const;
  void set(std::size_t qubit, Pauli p);

  bool is_identity() const { return !x_.any() && !z_.any(); }
  std::size_t weight() const;
  int y_count() const { return x_.popcount_and(z_); }

  std::string to_string() const;

  /// this (x) tail on qubit_count() + tail.qubit_count() qubits.
  PauliTerm tensor(const PauliTerm& tail) const;

  /// Parity of the symplectic form <x,z'> + <z,x'>.
  bool commutes_with(const PauliTerm& other) const {
    if (qubit_count() != other.qubit_count()) qubit_mismatch();
    return ((x_.popcount_and(other.z_) + z_.popcount_and(other.x_)) & 1) == 0;
  }

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
  friend std::strong_ordering operator<=>(const PauliTerm& a, const PauliTerm& b) {
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.z_ <=> b.z_;
  }

 private:
  [[noreturn]] static void qubit_mismatch();

  PackedBits x_;
  PackedBits z_;
};

/// P * Q = i^phase * R.
struct PauliProduct {
  int phase = 0;  // power of i, in [0, 4)
  PauliTerm term;
};

PauliProduct multiply(const PauliTerm& p, const PauliTerm& q);

/// [iP, iQ] = coefficient * i R.
struct TermCommutator {
  double coefficient = 0.0;  // always +-2
  PauliTerm term;
};

/// Symplectic commutator rule. nullopt when P and Q commute.
std::optional<TermCommutator> pauli_commutator(const PauliTerm& p, const PauliTerm& q);

/// Absolute magnitude below which stored coefficients are pruned.
inline constexpr double kCoefficientFloor = 1e-13;

/// Anti-Hermitian operator i * sum_k c_k P_k with real coefficients, kept in
/// canonical form: terms sorted, no duplicates, no coefficient below
/// kCoefficientFloor.
class PauliCombination {
 public:
  struct Entry {
    PauliTerm term;
    double coeff = 0.0;
  };

  PauliCombination() = default;
  explicit PauliCombination(std::size_t qubits) : qubits_(qubits) {}

  static PauliCombination from_entries(std::size_t qubits, std::vector<Entry> entries);
  static PauliCombination from_term(const PauliTerm& term, double coeff = 1.0);
  /// Convenience: {{"XIZ", 1.0}, {"ZZI", -0.5}}.
  static PauliCombination from_strings(
      std::initializer_list<std::pair<std::string_view, double>> terms);

  std::size_t qubit_count() const { return qubits_; }
  std::span<const Entry> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  double coefficient(const PauliTerm& term) const;
  double identity_coefficient() const;
  bool is_traceless() const { return identity_coefficient() == 0.0; }
  bool is_single_term() const { return terms_.size() == 1; }

  /// sqrt(sum c_k^2); hs_norm is 2^{n/2} times this.
  double coefficient_norm() const;

  PauliCombination& operator+=(const PauliCombination& o);
  PauliCombination& operator-=(const PauliCombination& o);
  PauliCombination& operator*=(double s);
  friend PauliCombination operator+(PauliCombination a, const PauliCombination& b) { return a += b; }
  friend PauliCombination operator-(PauliCombination a, const PauliCombination& b) { return a -= b; }
  friend PauliCombination operator*(PauliCombination a, double s) { return a *= s; }
  friend PauliCombination operator*(double s, PauliCombination a) { return a *= s; }

  /// this += alpha * x
  void add_scaled(double alpha, const PauliCombination& x);

  /// Human-readable "1*XI + -0.5*ZZ" (debug output, not the JSON form).
  std::string to_string() const;

  friend bool operator==(const PauliCombination& a, const PauliCombination& b);

 private:
  void canonicalize();

  std::size_t qubits_ = 0;
  std::vector<Entry> terms_;
};

double hs_inner(const PauliCombination& a, const PauliCombination& b);
double hs_norm(const PauliCombination& a);
void axpy(PauliCombination& y, double alpha, const PauliCombination& x);
PauliCombination scaled(const PauliCombination& x, double alpha);

/// Bilinear expansion over pauli_commutator; result canonical.
PauliCombination combination_commutator(const PauliCombination& a, const PauliCombination& b);
inline PauliCombination commutator(const PauliCombination& a, const PauliCombination& b) {
  return combination_commutator(a, b);
}

/// Real Pauli-basis expansion h = sum_Q c_Q Q of a Hermitian operator on
/// m qubits. Throws kNotHermitian when an expansion coefficient has an
/// imaginary part above tolerance.
std::vector<PauliCombination::Entry> expand_hermitian(const DenseOperator& h,
                                                      const TolerancePolicy& policy = {});

/// (i sum c P) (x) h as a combination on n + m qubits.
PauliCombination tensor_with_hermitian(const PauliCombination& a, const DenseOperator& h,
                                       const TolerancePolicy& policy = {});
inline PauliCombination tensor_hermitian(const PauliCombination& a, const DenseOperator& h,
                                         const TolerancePolicy& policy = {}) {
  return tensor_with_hermitian(a, h, policy);
}

/// Hermitian matrix of a single Pauli string.
DenseOperator pauli_matrix(const PauliTerm& p, int qubit_cap = kDenseQubitCap);

/// 2^n x 2^n anti-Hermitian matrix i sum c P.
DenseOperator to_dense(const PauliCombination& a, int qubit_cap = kDenseQubitCap);

/// Columns are coefficient vectors over the union of terms, scaled by
/// 2^{n/2} so that column products equal hs_inner.
Eigen::MatrixXd coordinate_matrix(std::span<const PauliCombination> ops);

struct AnticommutationGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> adjacency;
  bool connected = false;
};

AnticommutationGraph anticommutation_graph(std::span<const PauliTerm> generators);
/// Throws kInvalidArgument if any generator has more than one term.
AnticommutationGraph anticommutation_graph(std::span<const PauliCombination> generators);

}  // namespace dla
