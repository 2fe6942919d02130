#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dla/dense_operator.hpp"
#include "dla/error.hpp"
#include "dla/tolerance.hpp"

namespace dla {

// ---------------------------------------------------------------------------
// Real-span linear algebra over operators.
//
// The templates below work for any operator type Op that provides, via ADL,
//   double hs_inner(const Op&, const Op&);
//   void   axpy(Op& y, double alpha, const Op& x);    // y += alpha x
//   Op     scaled(const Op& x, double alpha);
// Both PauliCombination and DenseOperator qualify.
// ---------------------------------------------------------------------------

enum class ExtendStatus {
  kExtended,   // residual was large enough; basis grows by one
  kRejected,   // candidate lies in the span
  kTrivial,    // candidate norm below the absolute floor
};

template <class Op>
struct ExtendOutcome {
  ExtendStatus status = ExtendStatus::kTrivial;
  /// Expansion coefficients of the candidate in the (possibly extended)
  /// basis. When extended, the last coefficient is the residual norm.
  std::vector<double> coefficients;
  /// The new normalized element, present iff status == kExtended.
  std::optional<Op> element;
  double candidate_norm = 0.0;
  double residual_norm = 0.0;

  bool extended() const { return status == ExtendStatus::kExtended; }
};

/// Modified Gram-Schmidt projection with one re-orthogonalization pass.
/// `basis` must be hs-orthonormal.
template <class Op>
ExtendOutcome<Op> orthonormal_extend(std::span<const Op> basis, const Op& candidate,
                                     const TolerancePolicy& policy = {}) {
  ExtendOutcome<Op> out;
  out.coefficients.assign(basis.size(), 0.0);
  out.candidate_norm = std::sqrt(std::max(0.0, hs_inner(candidate, candidate)));
  if (out.candidate_norm <= policy.absolute_floor) {
    out.status = ExtendStatus::kTrivial;
    return out;
  }
  Op residual = candidate;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double c = hs_inner(basis[k], residual);
      if (c == 0.0) continue;
      axpy(residual, -c, basis[k]);
      out.coefficients[k] += c;
    }
  }
  out.residual_norm = std::sqrt(std::max(0.0, hs_inner(residual, residual)));
  if (out.residual_norm > policy.rank_threshold * out.candidate_norm) {
    out.status = ExtendStatus::kExtended;
    out.coefficients.push_back(out.residual_norm);
    out.element = scaled(residual, 1.0 / out.residual_norm);
  } else {
    out.status = ExtendStatus::kRejected;
  }
  return out;
}

/// Relative distance of x from span(basis): |x - P x| / |x| (0 for x = 0).
template <class Op>
double projection_residual(std::span<const Op> orthonormal_basis, const Op& x,
                           const TolerancePolicy& policy = {}) {
  const double n = std::sqrt(std::max(0.0, hs_inner(x, x)));
  if (n <= policy.absolute_floor) return 0.0;
  Op r = x;
  for (int pass = 0; pass < 2; ++pass) {
    for (const Op& e : orthonormal_basis) {
      const double c = hs_inner(e, r);
      if (c != 0.0) axpy(r, -c, e);
    }
  }
  return std::sqrt(std::max(0.0, hs_inner(r, r))) / n;
}

/// Orthonormal basis for span(ops); dependent members are dropped.
template <class Op>
std::vector<Op> orthonormalize(std::span<const Op> ops, const TolerancePolicy& policy = {}) {
  std::vector<Op> basis;
  for (const Op& op : ops) {
    auto r = orthonormal_extend<Op>(basis, op, policy);
    if (r.extended()) basis.push_back(std::move(*r.element));
  }
  return basis;
}

/// Coordinates <e_k, x> of x against an orthonormal basis.
template <class Op>
Eigen::VectorXd basis_coordinates(std::span<const Op> orthonormal_basis, const Op& x) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(orthonormal_basis.size()));
  for (std::size_t k = 0; k < orthonormal_basis.size(); ++k)
    c[static_cast<Eigen::Index>(k)] = hs_inner(orthonormal_basis[k], x);
  return c;
}

/// u and v are proportional: |<u,v>| / (|u||v|) > 1 - threshold, both non-zero.
template <class Op>
bool proportional(const Op& u, const Op& v, const TolerancePolicy& policy = {}) {
  const double nu = std::sqrt(std::max(0.0, hs_inner(u, u)));
  const double nv = std::sqrt(std::max(0.0, hs_inner(v, v)));
  if (nu <= policy.absolute_floor || nv <= policy.absolute_floor) return false;
  return std::abs(hs_inner(u, v)) / (nu * nv) > 1.0 - policy.proportionality_threshold;
}

/// Numerical rank from singular values relative to the largest one.
std::size_t numerical_rank(const Eigen::MatrixXd& m, double relative_threshold,
                           double absolute_floor = 1e-12);

/// Orthonormal basis (columns) of the right null space of m.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double relative_threshold,
                           double absolute_floor = 1e-12);

// ---------------------------------------------------------------------------
// Hermitian spectral decomposition
// ---------------------------------------------------------------------------

struct EigenPairs {
  Eigen::VectorXd values;          // ascending
  ComplexMatrix vectors;           // unitary, column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
EigenPairs jacobi_eigensolver(const ComplexMatrix& h, int max_sweeps = 64);

/// h = sum_k eigenvalues[k] * projectors[k], eigenvalues strictly ascending.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<DenseOperator> projectors;
  std::vector<int> multiplicities;

  std::size_t size() const { return eigenvalues.size(); }
  DenseOperator reconstruct() const;
};

SpectralDecomposition hermitian_eig(const DenseOperator& h, const TolerancePolicy& policy = {});

struct PowerSpanResult {
  bool spans = false;
  /// A zero eigenvalue with positive offset kills the determinant factor.
  bool structurally_singular = false;
  double determinant = 0.0;
  double condition = 0.0;
};

/// Whether span{h^(offset + j*stride) : 0 <= j < K} equals span{Pi_1..Pi_K},
/// decided by invertibility of the generalized Vandermonde matrix
/// V[j][i] = lambda_i^(offset + j*stride).
PowerSpanResult power_span_check(std::span<const double> eigenvalues, int offset, int stride,
                                 const TolerancePolicy& policy = {});
inline PowerSpanResult power_span_check(const SpectralDecomposition& d, int offset, int stride,
                                        const TolerancePolicy& policy = {}) {
  return power_span_check(d.eigenvalues, offset, stride, policy);
}

}  // namespace dla
