#include "dla/dense_operator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dla/error.hpp"
#include "dla/numeric.hpp"

namespace dla {

DenseOperator::DenseOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    fail(ErrorCode::kDimensionMismatch, "DenseOperator requires a square matrix, got " +
                                            std::to_string(m_.rows()) + "x" +
                                            std::to_string(m_.cols()));
}

DenseOperator DenseOperator::identity(Eigen::Index dim) {
  return DenseOperator(ComplexMatrix::Identity(dim, dim));
}

DenseOperator DenseOperator::zero(Eigen::Index dim) {
  return DenseOperator(ComplexMatrix::Zero(dim, dim));
}

DenseOperator DenseOperator::diagonal(std::span<const double> entries) {
  const auto d = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) m(k, k) = entries[static_cast<std::size_t>(k)];
  return DenseOperator(std::move(m));
}

double DenseOperator::hermiticity_defect() const {
  if (m_.size() == 0) return 0.0;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DenseOperator::anti_hermiticity_defect() const {
  if (m_.size() == 0) return 0.0;
  return (m_ + m_.adjoint()).cwiseAbs().maxCoeff();
}

bool DenseOperator::is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

bool DenseOperator::is_anti_hermitian(double tol) const {
  return anti_hermiticity_defect() <= tol;
}

std::optional<int> DenseOperator::qubit_count() const {
  const auto d = static_cast<std::uint64_t>(dim());
  if (d == 0 || !std::has_single_bit(d)) return std::nullopt;
  return std::countr_zero(d);
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& o) {
  if (dim() != o.dim()) fail(ErrorCode::kDimensionMismatch, "operator dimensions differ");
  m_ += o.m_;
  return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& o) {
  if (dim() != o.dim()) fail(ErrorCode::kDimensionMismatch, "operator dimensions differ");
  m_ -= o.m_;
  return *this;
}

DenseOperator& DenseOperator::operator*=(double s) {
  m_ *= s;
  return *this;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::kDimensionMismatch, "operator dimensions differ");
  return DenseOperator(a.m_ * b.m_);
}

DenseOperator operator*(Complex s, const DenseOperator& a) { return DenseOperator(s * a.m_); }

double hs_inner(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim())
    fail(ErrorCode::kDimensionMismatch, "hs_inner: dimensions " + std::to_string(a.dim()) +
                                            " and " + std::to_string(b.dim()));
  return a.matrix().conjugate().cwiseProduct(b.matrix()).sum().real();
}

double hs_norm(const DenseOperator& a) { return a.matrix().norm(); }

void axpy(DenseOperator& y, double alpha, const DenseOperator& x) {
  y += scaled(x, alpha);
}

DenseOperator scaled(const DenseOperator& x, double alpha) { return x * alpha; }

DenseOperator dense_commutator(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim())
    fail(ErrorCode::kDimensionMismatch, "commutator: dimensions " + std::to_string(a.dim()) +
                                            " and " + std::to_string(b.dim()));
  const ComplexMatrix& x = a.matrix();
  const ComplexMatrix& y = b.matrix();
  return DenseOperator(ComplexMatrix(x * y - y * x));
}

DenseOperator dense_tensor(const DenseOperator& a, const DenseOperator& b) {
  const Eigen::Index da = a.dim();
  const Eigen::Index db = b.dim();
  ComplexMatrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return DenseOperator(std::move(out));
}

DenseOperator matrix_power(const DenseOperator& a, int power) {
  if (power < 0) fail(ErrorCode::kInvalidArgument, "matrix_power: negative exponent");
  ComplexMatrix result = ComplexMatrix::Identity(a.dim(), a.dim());
  for (int k = 0; k < power; ++k) result = result * a.matrix();
  return DenseOperator(std::move(result));
}

Eigen::MatrixXd coordinate_matrix(std::span<const DenseOperator> ops) {
  if (ops.empty()) return Eigen::MatrixXd(0, 0);
  const Eigen::Index d = ops.front().dim();
  Eigen::MatrixXd out(2 * d * d, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].dim() != d) fail(ErrorCode::kDimensionMismatch, "coordinate_matrix: mixed dims");
    const ComplexMatrix& m = ops[k].matrix();
    auto col = out.col(static_cast<Eigen::Index>(k));
    for (Eigen::Index j = 0; j < d * d; ++j) {
      const Complex z = m.data()[j];
      col[2 * j] = z.real();
      col[2 * j + 1] = z.imag();
    }
  }
  return out;
}

DenseOperator build_hermitian_with_spectrum(std::span<const double> spectrum,
                                            const SpectrumOptions& options,
                                            const TolerancePolicy& policy) {
  if (spectrum.empty()) fail(ErrorCode::kInvalidArgument, "spectrum must be non-empty");
  double radius = 0.0;
  for (double v : spectrum) {
    if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "spectrum entries must be finite");
    radius = std::max(radius, std::abs(v));
  }
  const double tol = policy.eig_group_threshold * std::max(radius, 1.0);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    for (std::size_t j = i + 1; j < spectrum.size(); ++j) {
      if (options.require_distinct && std::abs(spectrum[i] - spectrum[j]) <= tol)
        fail(ErrorCode::kDuplicateEigenvalues, "spectrum entries " + std::to_string(i) + " and " +
                                                   std::to_string(j) + " coincide");
      if (options.require_sign_unambiguous && std::abs(spectrum[i]) > tol &&
          std::abs(spectrum[i] + spectrum[j]) <= tol)
        fail(ErrorCode::kSignAmbiguous, "spectrum contains the pair " +
                                            std::to_string(spectrum[i]) + ", " +
                                            std::to_string(spectrum[j]));
    }
  }
  const auto k = static_cast<std::uint64_t>(spectrum.size());
  const auto dim = std::bit_ceil(k);
  if (std::countr_zero(dim) > kDenseQubitCap)
    fail(ErrorCode::kDenseCapExceeded, "spectrum needs more than the dense qubit cap");

  std::vector<double> diag(spectrum.begin(), spectrum.end());
  diag.resize(dim, spectrum.back());
  DenseOperator h = DenseOperator::diagonal(diag);
  if (options.style == SpectrumStyle::kRandomConjugated) {
    std::mt19937_64 rng(options.seed);
    const ComplexMatrix u = random_unitary(static_cast<Eigen::Index>(dim), rng);
    ComplexMatrix m = u * h.matrix() * u.adjoint();
    // Symmetrize away rounding so downstream Hermiticity checks are exact.
    m = 0.5 * (m + m.adjoint()).eval();
    h = DenseOperator(std::move(m));
  }
  return h;
}

bool sign_unambiguous(const DenseOperator& q, const TolerancePolicy& policy) {
  if (!q.is_hermitian(1e-10)) fail(ErrorCode::kNotHermitian, "sign_unambiguous: input not Hermitian");
  const SpectralDecomposition d = hermitian_eig(q, policy);
  double radius = 0.0;
  for (double v : d.eigenvalues) radius = std::max(radius, std::abs(v));
  if (radius == 0.0) return true;
  const double tol = policy.eig_group_threshold * radius;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double a = d.eigenvalues[i];
    if (std::abs(a) <= tol) continue;
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double b = d.eigenvalues[j];
      if (std::abs(b) <= tol) continue;
      if (std::abs(a + b) < tol) return false;
    }
  }
  return true;
}

std::optional<double> square_scalar_check(const DenseOperator& a, double tol) {
  if (a.dim() == 0) return std::nullopt;
  const ComplexMatrix sq = a.matrix() * a.matrix();
  const Complex lambda = sq.trace() / static_cast<double>(a.dim());
  const ComplexMatrix diff = sq - lambda * ComplexMatrix::Identity(a.dim(), a.dim());
  const double scale = std::max(1.0, sq.norm());
  if (diff.norm() > tol * scale || std::abs(lambda.imag()) > tol * scale) return std::nullopt;
  return lambda.real();
}

ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

DenseOperator random_traceless_anti_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) h(i, j) = Complex(g(rng), g(rng));
  h = (0.5 * (h + h.adjoint())).eval();
  h -= (h.trace() / static_cast<double>(dim)) * ComplexMatrix::Identity(dim, dim);
  return DenseOperator(Complex(0.0, 1.0) * h);
}

DenseOperator random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) h(i, j) = Complex(g(rng), g(rng));
  h = (0.5 * (h + h.adjoint())).eval();
  const double n = h.norm();
  if (n > 0) h /= n;
  return DenseOperator(std::move(h));
}

}  // namespace dla
