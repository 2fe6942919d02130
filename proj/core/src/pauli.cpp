#include "dla/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <string>

#include "dla/error.hpp"

namespace dla {

// ---------------------------------------------------------------------------
// PackedBits
// ---------------------------------------------------------------------------

PackedBits::PackedBits(std::size_t nbits) : nbits_(nbits) {
  if (nbits > 64) tail_.assign(word_count() - 1, 0);
}

bool PackedBits::test(std::size_t bit) const {
  return (word(bit / 64) >> (bit % 64)) & 1U;
}

void PackedBits::set(std::size_t bit, bool value) {
  if (bit >= nbits_) fail(ErrorCode::kInvalidArgument, "PackedBits::set: bit out of range");
  const std::uint64_t m = std::uint64_t{1} << (bit % 64);
  std::uint64_t& w = word_ref(bit / 64);
  w = value ? (w | m) : (w & ~m);
}

bool PackedBits::any() const {
  if (head_ != 0) return true;
  return std::any_of(tail_.begin(), tail_.end(), [](std::uint64_t w) { return w != 0; });
}

int PackedBits::popcount() const {
  int c = std::popcount(head_);
  for (std::uint64_t w : tail_) c += std::popcount(w);
  return c;
}

void PackedBits::length_mismatch() {
  fail(ErrorCode::kDimensionMismatch, "PackedBits: length mismatch");
}

PackedBits operator&(const PackedBits& a, const PackedBits& b) {
  if (a.nbits_ != b.nbits_) fail(ErrorCode::kDimensionMismatch, "PackedBits: length mismatch");
  PackedBits out = a;
  out.head_ &= b.head_;
  for (std::size_t k = 0; k < out.tail_.size(); ++k) out.tail_[k] &= b.tail_[k];
  return out;
}

PackedBits PackedBits::concat(const PackedBits& tail) const {
  PackedBits out(nbits_ + tail.nbits_);
  for (std::size_t k = 0; k < nbits_; ++k)
    if (test(k)) out.set(k, true);
  for (std::size_t k = 0; k < tail.nbits_; ++k)
    if (tail.test(k)) out.set(nbits_ + k, true);
  return out;
}

// ---------------------------------------------------------------------------
// PauliTerm
// ---------------------------------------------------------------------------

PauliTerm PauliTerm::from_string(std::string_view text) {
  if (text.empty()) fail(ErrorCode::kMalformedInput, "empty Pauli string");
  PauliTerm t(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    switch (text[k]) {
      case 'I': break;
      case 'X': t.set(k, Pauli::X); break;
      case 'Y': t.set(k, Pauli::Y); break;
      case 'Z': t.set(k, Pauli::Z); break;
      default:
        fail(ErrorCode::kMalformedInput,
             "invalid character '" + std::string(1, text[k]) + "' in Pauli string");
    }
  }
  return t;
}

PauliTerm PauliTerm::single(std::size_t qubits, std::size_t qubit, Pauli p) {
  PauliTerm t(qubits);
  t.set(qubit, p);
  return t;
}

PauliTerm PauliTerm::from_masks(PackedBits x, PackedBits z) {
  if (x.size() != z.size()) fail(ErrorCode::kDimensionMismatch, "x and z masks differ in length");
  PauliTerm t;
  t.x_ = std::move(x);
  t.z_ = std::move(z);
  return t;
}

Pauli PauliTerm::at(std::size_t qubit) const {
  const bool x = x_.test(qubit);
  const bool z = z_.test(qubit);
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliTerm::set(std::size_t qubit, Pauli p) {
  x_.set(qubit, p == Pauli::X || p == Pauli::Y);
  z_.set(qubit, p == Pauli::Z || p == Pauli::Y);
}

std::size_t PauliTerm::weight() const {
  std::size_t w = 0;
  for (std::size_t k = 0; k < qubit_count(); ++k) w += at(k) != Pauli::I;
  return w;
}

std::string PauliTerm::to_string() const {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  std::string s(qubit_count(), 'I');
  for (std::size_t k = 0; k < qubit_count(); ++k) s[k] = kChars[static_cast<int>(at(k))];
  return s;
}

PauliTerm PauliTerm::tensor(const PauliTerm& tail) const {
  PauliTerm out;
  out.x_ = x_.concat(tail.x_);
  out.z_ = z_.concat(tail.z_);
  return out;
}

void PauliTerm::qubit_mismatch() {
  fail(ErrorCode::kDimensionMismatch, "Pauli terms act on different qubit counts");
}

// P1 P2 = i^{y1 + y2 - y3 + 2|z1 & x2|} P3 with P = i^{|x&z|} X^x Z^z.
PauliProduct multiply(const PauliTerm& p, const PauliTerm& q) {
  if (p.qubit_count() != q.qubit_count())
    fail(ErrorCode::kDimensionMismatch, "Pauli terms act on different qubit counts");
  PauliProduct out;
  out.term = PauliTerm::from_masks(p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask());
  const int e = p.y_count() + q.y_count() - out.term.y_count() +
                2 * p.z_mask().popcount_and(q.x_mask());
  out.phase = ((e % 4) + 4) % 4;
  return out;
}

std::optional<TermCommutator> pauli_commutator(const PauliTerm& p, const PauliTerm& q) {
  if (p.commutes_with(q)) return std::nullopt;
  const PauliProduct pq = multiply(p, q);
  // [iP, iQ] = -(PQ - QP) = -2 i^e R for anticommuting P, Q.
  if (pq.phase % 2 == 0)
    fail(ErrorCode::kPhaseViolation, "anticommuting Pauli product has a real phase: " +
                                         p.to_string() + " * " + q.to_string());
  return TermCommutator{pq.phase == 1 ? -2.0 : 2.0, pq.term};
}

// ---------------------------------------------------------------------------
// PauliCombination
// ---------------------------------------------------------------------------

PauliCombination PauliCombination::from_entries(std::size_t qubits, std::vector<Entry> entries) {
  for (const Entry& e : entries) {
    if (e.term.qubit_count() != qubits)
      fail(ErrorCode::kDimensionMismatch, "Pauli term " + e.term.to_string() + " is not on " +
                                              std::to_string(qubits) + " qubits");
    if (!std::isfinite(e.coeff)) fail(ErrorCode::kMalformedInput, "non-finite coefficient");
  }
  PauliCombination out(qubits);
  out.terms_ = std::move(entries);
  out.canonicalize();
  return out;
}

PauliCombination PauliCombination::from_term(const PauliTerm& term, double coeff) {
  return from_entries(term.qubit_count(), {Entry{term, coeff}});
}

PauliCombination PauliCombination::from_strings(
    std::initializer_list<std::pair<std::string_view, double>> terms) {
  if (terms.size() == 0) fail(ErrorCode::kInvalidArgument, "from_strings: no terms");
  std::vector<Entry> entries;
  for (const auto& [s, c] : terms) entries.push_back({PauliTerm::from_string(s), c});
  const std::size_t n = entries.front().term.qubit_count();
  return from_entries(n, std::move(entries));
}

void PauliCombination::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Entry& a, const Entry& b) { return a.term < b.term; });
  std::vector<Entry> merged;
  merged.reserve(terms_.size());
  for (Entry& e : terms_) {
    if (!merged.empty() && merged.back().term == e.term)
      merged.back().coeff += e.coeff;
    else
      merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](const Entry& e) { return std::abs(e.coeff) < kCoefficientFloor; });
  terms_ = std::move(merged);
}

double PauliCombination::coefficient(const PauliTerm& term) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), term,
                             [](const Entry& e, const PauliTerm& t) { return e.term < t; });
  return it != terms_.end() && it->term == term ? it->coeff : 0.0;
}

double PauliCombination::identity_coefficient() const {
  return coefficient(PauliTerm(qubits_));
}

double PauliCombination::coefficient_norm() const {
  double s = 0.0;
  for (const Entry& e : terms_) s += e.coeff * e.coeff;
  return std::sqrt(s);
}

void PauliCombination::add_scaled(double alpha, const PauliCombination& x) {
  if (x.qubits_ != qubits_)
    fail(ErrorCode::kDimensionMismatch, "Pauli combinations act on different qubit counts");
  if (alpha == 0.0 || x.terms_.empty()) return;
  std::vector<Entry> out;
  out.reserve(terms_.size() + x.terms_.size());
  auto a = terms_.begin();
  auto b = x.terms_.begin();
  while (a != terms_.end() || b != x.terms_.end()) {
    if (b == x.terms_.end() || (a != terms_.end() && a->term < b->term)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->term < a->term) {
      out.push_back({b->term, alpha * b->coeff});
      ++b;
    } else {
      const double c = a->coeff + alpha * b->coeff;
      if (std::abs(c) >= kCoefficientFloor) out.push_back({std::move(a->term), c});
      ++a;
      ++b;
    }
  }
  std::erase_if(out, [](const Entry& e) { return std::abs(e.coeff) < kCoefficientFloor; });
  terms_ = std::move(out);
}

PauliCombination& PauliCombination::operator+=(const PauliCombination& o) {
  add_scaled(1.0, o);
  return *this;
}

PauliCombination& PauliCombination::operator-=(const PauliCombination& o) {
  add_scaled(-1.0, o);
  return *this;
}

PauliCombination& PauliCombination::operator*=(double s) {
  for (Entry& e : terms_) e.coeff *= s;
  std::erase_if(terms_, [](const Entry& e) { return std::abs(e.coeff) < kCoefficientFloor; });
  return *this;
}

std::string PauliCombination::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  char buf[64];
  for (const Entry& e : terms_) {
    if (!s.empty()) s += " + ";
    std::snprintf(buf, sizeof buf, "%.6g*", e.coeff);
    s += buf;
    s += e.term.to_string();
  }
  return s;
}

bool operator==(const PauliCombination& a, const PauliCombination& b) {
  if (a.qubits_ != b.qubits_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (a.terms_[k].term != b.terms_[k].term || a.terms_[k].coeff != b.terms_[k].coeff)
      return false;
  return true;
}

double hs_inner(const PauliCombination& a, const PauliCombination& b) {
  if (a.qubit_count() != b.qubit_count())
    fail(ErrorCode::kDimensionMismatch, "hs_inner: qubit counts differ");
  double s = 0.0;
  auto x = a.terms().begin();
  auto y = b.terms().begin();
  while (x != a.terms().end() && y != b.terms().end()) {
    const auto c = x->term <=> y->term;
    if (c < 0) {
      ++x;
    } else if (c > 0) {
      ++y;
    } else {
      s += x->coeff * y->coeff;
      ++x;
      ++y;
    }
  }
  return std::ldexp(s, static_cast<int>(a.qubit_count()));
}

double hs_norm(const PauliCombination& a) {
  return std::sqrt(std::max(0.0, hs_inner(a, a)));
}

void axpy(PauliCombination& y, double alpha, const PauliCombination& x) { y.add_scaled(alpha, x); }

PauliCombination scaled(const PauliCombination& x, double alpha) { return x * alpha; }

namespace {

// Single-word fast path: products keyed by (x, z) words, whose lexicographic
// order equals the PauliTerm order.
struct PackedProduct {
  std::uint64_t x;
  std::uint64_t z;
  double coeff;
};

PauliCombination small_commutator(const PauliCombination& a, const PauliCombination& b) {
  const std::size_t n = a.qubit_count();
  std::vector<PackedProduct> prods;
  prods.reserve(a.size() * b.size() / 2 + 1);
  for (const auto& p : a.terms()) {
    const std::uint64_t px = p.term.x_mask().word(0);
    const std::uint64_t pz = p.term.z_mask().word(0);
    const int py = std::popcount(px & pz);
    for (const auto& q : b.terms()) {
      const std::uint64_t qx = q.term.x_mask().word(0);
      const std::uint64_t qz = q.term.z_mask().word(0);
      if (((std::popcount(px & qz) + std::popcount(pz & qx)) & 1) == 0) continue;
      const std::uint64_t rx = px ^ qx;
      const std::uint64_t rz = pz ^ qz;
      const int e = (((py + std::popcount(qx & qz) - std::popcount(rx & rz) +
                       2 * std::popcount(pz & qx)) % 4) + 4) % 4;
      if (e % 2 == 0)
        fail(ErrorCode::kPhaseViolation, "anticommuting Pauli product has a real phase: " +
                                             p.term.to_string() + " * " + q.term.to_string());
      prods.push_back({rx, rz, (e == 1 ? -2.0 : 2.0) * p.coeff * q.coeff});
    }
  }
  std::sort(prods.begin(), prods.end(), [](const PackedProduct& l, const PackedProduct& r) {
    return l.x != r.x ? l.x < r.x : l.z < r.z;
  });
  std::vector<PauliCombination::Entry> out;
  for (std::size_t k = 0; k < prods.size();) {
    double c = 0.0;
    std::size_t j = k;
    for (; j < prods.size() && prods[j].x == prods[k].x && prods[j].z == prods[k].z; ++j)
      c += prods[j].coeff;
    if (std::abs(c) >= kCoefficientFloor)
      out.push_back({PauliTerm::from_masks(PackedBits::from_word(n, prods[k].x),
                                           PackedBits::from_word(n, prods[k].z)),
                     c});
    k = j;
  }
  return PauliCombination::from_entries(n, std::move(out));
}

}  // namespace

PauliCombination combination_commutator(const PauliCombination& a, const PauliCombination& b) {
  if (a.qubit_count() != b.qubit_count())
    fail(ErrorCode::kDimensionMismatch, "commutator: qubit counts differ");
  if (a.qubit_count() <= 64) return small_commutator(a, b);
  std::vector<PauliCombination::Entry> out;
  out.reserve(a.size() * b.size() / 2 + 1);
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      if (x.term.commutes_with(y.term)) continue;
      const TermCommutator c = pauli_commutator(x.term, y.term).value();
      out.push_back({c.term, c.coefficient * x.coeff * y.coeff});
    }
  }
  return PauliCombination::from_entries(a.qubit_count(), std::move(out));
}

// ---------------------------------------------------------------------------
// Dense bridge
// ---------------------------------------------------------------------------

namespace {

// Basis index of a computational state: qubit 0 is the most significant bit,
// matching the Kronecker order of dense_tensor.
std::uint64_t dense_mask(const PackedBits& bits) {
  const std::size_t n = bits.size();
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (bits.test(k)) m |= std::uint64_t{1} << (n - 1 - k);
  return m;
}

Complex i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_cap(std::size_t qubits, int cap) {
  if (qubits > static_cast<std::size_t>(std::min(cap, kDenseQubitCap)))
    fail(ErrorCode::kDenseCapExceeded, std::to_string(qubits) +
                                           " qubits exceed the dense cap of " +
                                           std::to_string(std::min(cap, kDenseQubitCap)));
}

// Accumulates scale * P into m; P maps |b> to i^y (-1)^{|z&b|} |b ^ x>.
void add_pauli(ComplexMatrix& m, const PauliTerm& p, Complex scale) {
  const std::uint64_t x = dense_mask(p.x_mask());
  const std::uint64_t z = dense_mask(p.z_mask());
  const Complex base = scale * i_power(p.y_count());
  const auto dim = static_cast<std::uint64_t>(m.rows());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const bool neg = std::popcount(z & b) & 1;
    m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += neg ? -base : base;
  }
}

}  // namespace

DenseOperator pauli_matrix(const PauliTerm& p, int qubit_cap) {
  check_cap(p.qubit_count(), qubit_cap);
  const auto dim = Eigen::Index{1} << p.qubit_count();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  add_pauli(m, p, 1.0);
  return DenseOperator(std::move(m));
}

DenseOperator to_dense(const PauliCombination& a, int qubit_cap) {
  check_cap(a.qubit_count(), qubit_cap);
  const auto dim = Eigen::Index{1} << a.qubit_count();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& e : a.terms()) add_pauli(m, e.term, Complex(0.0, e.coeff));
  return DenseOperator(std::move(m));
}

std::vector<PauliCombination::Entry> expand_hermitian(const DenseOperator& h,
                                                      const TolerancePolicy& policy) {
  const auto qubits = h.qubit_count();
  if (!qubits) fail(ErrorCode::kDimensionMismatch, "expand_hermitian: dimension is not 2^m");
  check_cap(static_cast<std::size_t>(*qubits), kDenseQubitCap);
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (h.hermiticity_defect() > 1e-10 * scale)
    fail(ErrorCode::kNotHermitian, "expand_hermitian: operator is not Hermitian");

  const auto m = static_cast<std::size_t>(*qubits);
  const std::uint64_t dim = std::uint64_t{1} << m;
  const double inv_dim = 1.0 / static_cast<double>(dim);
  std::vector<PauliCombination::Entry> out;
  // Enumerate all 4^m strings via their dense (x, z) masks.
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      PauliTerm t(m);
      for (std::size_t k = 0; k < m; ++k) {
        const std::uint64_t bit = std::uint64_t{1} << (m - 1 - k);
        const bool xb = x & bit;
        const bool zb = z & bit;
        t.set(k, xb && zb ? Pauli::Y : xb ? Pauli::X : zb ? Pauli::Z : Pauli::I);
      }
      // tr(P h) = sum_b P(b^x, b) h(b, b^x)
      Complex tr = 0.0;
      const Complex base = i_power(t.y_count());
      for (std::uint64_t b = 0; b < dim; ++b) {
        const bool neg = std::popcount(z & b) & 1;
        tr += (neg ? -base : base) *
              h.matrix()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ x));
      }
      const Complex c = tr * inv_dim;
      if (std::abs(c.imag()) > std::max(policy.absolute_floor, 1e-10 * scale))
        fail(ErrorCode::kNotHermitian, "expand_hermitian: complex Pauli coefficient on " +
                                           t.to_string());
      if (std::abs(c.real()) >= kCoefficientFloor) out.push_back({std::move(t), c.real()});
    }
  }
  return out;
}

PauliCombination tensor_with_hermitian(const PauliCombination& a, const DenseOperator& h,
                                       const TolerancePolicy& policy) {
  const auto expansion = expand_hermitian(h, policy);
  const std::size_t m = static_cast<std::size_t>(*h.qubit_count());
  std::vector<PauliCombination::Entry> out;
  out.reserve(a.size() * expansion.size());
  for (const auto& x : a.terms())
    for (const auto& y : expansion) out.push_back({x.term.tensor(y.term), x.coeff * y.coeff});
  return PauliCombination::from_entries(a.qubit_count() + m, std::move(out));
}

Eigen::MatrixXd coordinate_matrix(std::span<const PauliCombination> ops) {
  if (ops.empty()) return Eigen::MatrixXd(0, 0);
  const std::size_t n = ops.front().qubit_count();
  std::map<PauliTerm, Eigen::Index> index;
  for (const auto& op : ops) {
    if (op.qubit_count() != n)
      fail(ErrorCode::kDimensionMismatch, "coordinate_matrix: mixed qubit counts");
    for (const auto& e : op.terms()) index.emplace(e.term, 0);
  }
  Eigen::Index row = 0;
  for (auto& [term, r] : index) r = row++;
  const double scale = std::sqrt(std::ldexp(1.0, static_cast<int>(n)));
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(row, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k)
    for (const auto& e : ops[k].terms())
      out(index.at(e.term), static_cast<Eigen::Index>(k)) = scale * e.coeff;
  return out;
}

AnticommutationGraph anticommutation_graph(std::span<const PauliTerm> generators) {
  AnticommutationGraph g;
  g.vertex_count = generators.size();
  g.adjacency.resize(g.vertex_count);
  for (std::size_t i = 0; i < g.vertex_count; ++i) {
    for (std::size_t j = i + 1; j < g.vertex_count; ++j) {
      if (!generators[i].commutes_with(generators[j])) {
        g.edges.emplace_back(i, j);
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  if (g.vertex_count == 0) return g;
  std::vector<bool> seen(g.vertex_count, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : g.adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  g.connected = reached == g.vertex_count;
  return g;
}

AnticommutationGraph anticommutation_graph(std::span<const PauliCombination> generators) {
  std::vector<PauliTerm> terms;
  terms.reserve(generators.size());
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (!generators[k].is_single_term())
      fail(ErrorCode::kInvalidArgument, "anticommutation graph needs single Pauli terms; generator " +
                                            std::to_string(k) + " has " +
                                            std::to_string(generators[k].size()) + " terms");
    terms.push_back(generators[k].terms().front().term);
  }
  return anticommutation_graph(terms);
}

}  // namespace dla
