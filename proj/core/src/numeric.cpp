#include "dla/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

namespace dla {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kNotHermitian: return "not-hermitian";
    case ErrorCode::kNotAntiHermitian: return "not-anti-hermitian";
    case ErrorCode::kNotTraceless: return "not-traceless";
    case ErrorCode::kDependentGenerators: return "dependent-generators";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kSignAmbiguous: return "sign-ambiguous";
    case ErrorCode::kDuplicateEigenvalues: return "duplicate-eigenvalues";
    case ErrorCode::kDenseCapExceeded: return "dense-cap-exceeded";
    case ErrorCode::kMalformedInput: return "malformed-input";
    case ErrorCode::kCappedBasis: return "capped-basis";
    case ErrorCode::kPhaseViolation: return "phase-violation";
    case ErrorCode::kPreconditionFailed: return "precondition-failed";
  }
  return "unknown";
}

void TolerancePolicy::validate() const {
  if (!(rank_threshold > 0) || !(eig_group_threshold > 0) || !(proportionality_threshold > 0) ||
      !(absolute_floor > 0))
    fail(ErrorCode::kInvalidArgument, "tolerance thresholds must be strictly positive");
}

std::size_t numerical_rank(const Eigen::MatrixXd& m, double relative_threshold,
                           double absolute_floor) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= absolute_floor) return 0;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[k] > relative_threshold * s[0]) ++r;
  return r;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double relative_threshold,
                           double absolute_floor) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s[0] > absolute_floor)
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (s[k] > relative_threshold * s[0]) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

DenseOperator SpectralDecomposition::reconstruct() const {
  if (projectors.empty()) return DenseOperator();
  DenseOperator out = DenseOperator::zero(projectors.front().dim());
  for (std::size_t k = 0; k < size(); ++k) axpy(out, eigenvalues[k], projectors[k]);
  return out;
}

SpectralDecomposition hermitian_eig(const DenseOperator& h, const TolerancePolicy& policy) {
  policy.validate();
  if (h.dim() == 0) fail(ErrorCode::kInvalidArgument, "hermitian_eig: empty operator");
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (h.hermiticity_defect() > 1e-10 * scale)
    fail(ErrorCode::kNotHermitian, "hermitian_eig: input is not Hermitian");

  const EigenPairs pairs = jacobi_eigensolver(h.matrix());
  double radius = 0.0;
  for (Eigen::Index k = 0; k < pairs.values.size(); ++k)
    radius = std::max(radius, std::abs(pairs.values[k]));
  const double group_tol = policy.eig_group_threshold * std::max(radius, policy.absolute_floor);

  SpectralDecomposition out;
  const Eigen::Index n = pairs.values.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && pairs.values[stop] - pairs.values[stop - 1] <= group_tol) ++stop;
    const Eigen::Index count = stop - start;
    const ComplexMatrix vecs = pairs.vectors.middleCols(start, count);
    out.eigenvalues.push_back(pairs.values.segment(start, count).mean());
    out.projectors.emplace_back(ComplexMatrix(vecs * vecs.adjoint()));
    out.multiplicities.push_back(static_cast<int>(count));
    start = stop;
  }
  return out;
}

PowerSpanResult power_span_check(std::span<const double> eigenvalues, int offset, int stride,
                                 const TolerancePolicy& policy) {
  if (offset < 0 || stride < 1)
    fail(ErrorCode::kInvalidArgument, "power_span_check: need offset >= 0 and stride >= 1");
  PowerSpanResult out;
  const auto k = static_cast<Eigen::Index>(eigenvalues.size());
  if (k == 0) {
    out.spans = true;
    out.determinant = 1.0;
    out.condition = 1.0;
    return out;
  }
  double radius = 0.0;
  for (double v : eigenvalues) radius = std::max(radius, std::abs(v));
  const double zero_tol = policy.eig_group_threshold * std::max(radius, policy.absolute_floor);

  // Rows scaled by radius^(offset + j*stride) so the entries stay O(1); this
  // does not change singularity.
  Eigen::MatrixXd v(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const int power = offset + static_cast<int>(j) * stride;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double x = radius > 0 ? eigenvalues[static_cast<std::size_t>(i)] / radius : 0.0;
      v(j, i) = std::pow(x, power);
    }
  }
  out.determinant = v.fullPivLu().determinant();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
  const auto& s = svd.singularValues();
  out.condition = s[k - 1] > 0 ? s[0] / s[k - 1] : std::numeric_limits<double>::infinity();

  // det V = (prod lambda_i)^offset * prod_{i<j} (mu_j - mu_i), mu = lambda^stride.
  if (offset > 0) {
    for (double x : eigenvalues) {
      if (std::abs(x) <= zero_tol) {
        out.structurally_singular = true;
        out.spans = false;
        return out;
      }
    }
  }
  std::vector<double> mu;
  double mu_radius = 0.0;
  for (double x : eigenvalues) {
    mu.push_back(std::pow(x, stride));
    mu_radius = std::max(mu_radius, std::abs(mu.back()));
  }
  const double mu_tol = policy.eig_group_threshold * std::max(mu_radius, policy.absolute_floor);
  out.spans = true;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j)
      if (std::abs(mu[i] - mu[j]) <= mu_tol) out.spans = false;
  return out;
}

}  // namespace dla
