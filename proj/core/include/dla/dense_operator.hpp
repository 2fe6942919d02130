#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dla/tolerance.hpp"

namespace dla {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Hard cap on the dense backend, in qubits (2^10 x 2^10 matrices).
inline constexpr int kDenseQubitCap = 10;

/// Explicit square complex matrix. Used both for anti-Hermitian Lie algebra
/// elements and for the Hermitian ancilla operators (chi, Q, projectors).
class DenseOperator {
 public:
  DenseOperator() = default;
  explicit DenseOperator(ComplexMatrix m);

  static DenseOperator identity(Eigen::Index dim);
  static DenseOperator zero(Eigen::Index dim);
  static DenseOperator diagonal(std::span<const double> entries);

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

  Complex trace() const { return m_.trace(); }
  DenseOperator adjoint() const { return DenseOperator(m_.adjoint()); }

  /// Max-entry deviation from Hermiticity / anti-Hermiticity.
  double hermiticity_defect() const;
  double anti_hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;

  /// Number of qubits when dim is a power of two, otherwise nullopt.
  std::optional<int> qubit_count() const;

  DenseOperator& operator+=(const DenseOperator& o);
  DenseOperator& operator-=(const DenseOperator& o);
  DenseOperator& operator*=(double s);

  friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
  friend DenseOperator operator*(DenseOperator a, double s) { return a *= s; }
  friend DenseOperator operator*(double s, DenseOperator a) { return a *= s; }
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator*(Complex s, const DenseOperator& a);

 private:
  ComplexMatrix m_;
};

// Real Hilbert-Schmidt geometry: Re tr(a^dagger b).
double hs_inner(const DenseOperator& a, const DenseOperator& b);
double hs_norm(const DenseOperator& a);

/// y += alpha * x
void axpy(DenseOperator& y, double alpha, const DenseOperator& x);
DenseOperator scaled(const DenseOperator& x, double alpha);

/// [a, b] = ab - ba.
DenseOperator dense_commutator(const DenseOperator& a, const DenseOperator& b);
inline DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  return dense_commutator(a, b);
}

/// Kronecker product a (x) b; a acts on the leading factor.
DenseOperator dense_tensor(const DenseOperator& a, const DenseOperator& b);
inline DenseOperator tensor_hermitian(const DenseOperator& a, const DenseOperator& h,
                                      const TolerancePolicy& = {}) {
  return dense_tensor(a, h);
}

/// Integer power of a square operator; power 0 is the identity.
DenseOperator matrix_power(const DenseOperator& a, int power);

/// Real coordinates (column per operator) in a common orthonormal frame, so
/// that Euclidean products of columns equal hs_inner.
Eigen::MatrixXd coordinate_matrix(std::span<const DenseOperator> ops);

enum class SpectrumStyle { kDiagonal, kRandomConjugated };

struct SpectrumOptions {
  SpectrumStyle style = SpectrumStyle::kDiagonal;
  bool require_distinct = true;
  /// Reject spectra containing a non-zero pair lambda, -lambda.
  bool require_sign_unambiguous = false;
  /// Seed of the random similarity for kRandomConjugated.
  std::uint64_t seed = 0;
};

/// Hermitian operator on ceil(log2 K) qubits whose distinct eigenvalues are
/// exactly `spectrum`. Short spectra are padded by repeating the last
/// eigenvalue up to the next power of two.
DenseOperator build_hermitian_with_spectrum(std::span<const double> spectrum,
                                            const SpectrumOptions& options = {},
                                            const TolerancePolicy& policy = {});

/// True iff no two non-zero eigenvalues of q satisfy lambda = -lambda'.
bool sign_unambiguous(const DenseOperator& q, const TolerancePolicy& policy = {});

/// Returns lambda when a^2 = lambda * I to tolerance, otherwise nullopt.
std::optional<double> square_scalar_check(const DenseOperator& a, double tol = 1e-10);

/// Haar-random unitary via QR of a complex Ginibre matrix.
ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

/// Random traceless anti-Hermitian operator with Gaussian entries.
DenseOperator random_traceless_anti_hermitian(Eigen::Index dim, std::mt19937_64& rng);

/// Random Hermitian operator with Gaussian entries, scaled to unit operator norm bound.
DenseOperator random_hermitian(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace dla
