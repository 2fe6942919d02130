#include "dla/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "dla/closure.hpp"
#include "dla/numeric.hpp"

namespace dla {

// ---------------------------------------------------------------------------
// GeneratorSpec
// ---------------------------------------------------------------------------

GeneratorSpec GeneratorSpec::from_pauli(std::vector<PauliCombination> generators,
                                        std::string family_tag, const TolerancePolicy& policy) {
  validate_generators<PauliCombination>(generators, policy);
  GeneratorSpec s;
  s.qubits_ = generators.front().qubit_count();
  s.pauli_ = std::move(generators);
  s.family_tag_ = std::move(family_tag);
  return s;
}

GeneratorSpec GeneratorSpec::from_dense(std::vector<DenseOperator> generators,
                                        std::string family_tag, const TolerancePolicy& policy) {
  validate_generators<DenseOperator>(generators, policy);
  const auto qubits = generators.front().qubit_count();
  if (!qubits)
    fail(ErrorCode::kDimensionMismatch, "dense generators must have dimension 2^n, got " +
                                            std::to_string(generators.front().dim()));
  GeneratorSpec s;
  s.qubits_ = static_cast<std::size_t>(*qubits);
  s.dense_ = std::move(generators);
  s.family_tag_ = std::move(family_tag);
  return s;
}

std::vector<DenseOperator> GeneratorSpec::dense_generators(int qubit_cap) const {
  if (!is_pauli()) return dense_;
  std::vector<DenseOperator> out;
  out.reserve(pauli_.size());
  for (const auto& a : pauli_) out.push_back(to_dense(a, qubit_cap));
  return out;
}

GeneratorSpec GeneratorSpec::to_dense_spec() const {
  GeneratorSpec s;
  s.qubits_ = qubits_;
  s.dense_ = dense_generators();
  s.family_tag_ = family_tag_;
  return s;
}

// ---------------------------------------------------------------------------
// Modifications
// ---------------------------------------------------------------------------

std::size_t distinct_eigenvalue_count(const DenseOperator& h, const TolerancePolicy& policy) {
  return hermitian_eig(h, policy).size();
}

namespace {

void require_hermitian(const DenseOperator& h, const char* what) {
  if (h.dim() == 0) fail(ErrorCode::kInvalidArgument, std::string(what) + " is empty");
  if (!h.qubit_count())
    fail(ErrorCode::kDimensionMismatch, std::string(what) + " must act on qubits (dimension 2^m)");
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (h.hermiticity_defect() > 1e-10 * scale)
    fail(ErrorCode::kNotHermitian, std::string(what) + " is not Hermitian");
}

// Applies A_i (x) h for the listed (generator, ancilla operator) pairs.
GeneratorSpec build_tensor_set(const GeneratorSpec& spec,
                               const std::vector<std::pair<std::size_t, const DenseOperator*>>& plan,
                               std::string tag, const TolerancePolicy& policy) {
  if (spec.is_pauli()) {
    std::vector<PauliCombination> out;
    out.reserve(plan.size());
    for (const auto& [i, h] : plan) out.push_back(tensor_with_hermitian(spec.pauli()[i], *h, policy));
    return GeneratorSpec::from_pauli(std::move(out), std::move(tag), policy);
  }
  std::vector<DenseOperator> out;
  out.reserve(plan.size());
  for (const auto& [i, h] : plan) out.push_back(dense_tensor(spec.dense()[i], *h));
  return GeneratorSpec::from_dense(std::move(out), std::move(tag), policy);
}

std::string tag_of(const GeneratorSpec& spec, const std::string& suffix) {
  return spec.family_tag().empty() ? suffix : spec.family_tag() + "|" + suffix;
}

}  // namespace

GeneratorSpec extend_naive(const GeneratorSpec& spec, const DenseOperator& chi, std::size_t q,
                           const TolerancePolicy& policy) {
  require_hermitian(chi, "chi");
  const std::size_t k = distinct_eigenvalue_count(chi, policy);
  if (k < 2)
    fail(ErrorCode::kPreconditionFailed,
         "chi needs at least two distinct eigenvalues (found " + std::to_string(k) + ")");
  if (q < 1 || q > k)
    fail(ErrorCode::kInvalidArgument, "power count q = " + std::to_string(q) +
                                          " must lie in [1, K] with K = " + std::to_string(k) +
                                          "; higher powers are dependent");
  std::vector<DenseOperator> powers;
  for (std::size_t j = 0; j < q; ++j) powers.push_back(matrix_power(chi, static_cast<int>(j)));
  std::vector<std::pair<std::size_t, const DenseOperator*>> plan;
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < spec.size(); ++i) plan.emplace_back(i, &powers[j]);
  return build_tensor_set(spec, plan, tag_of(spec, "naive(q=" + std::to_string(q) + ")"), policy);
}

GeneratorSpec extend_subset(const GeneratorSpec& spec, const DenseOperator& chi,
                            std::span<const std::size_t> subset, const TolerancePolicy& policy) {
  require_hermitian(chi, "chi");
  if (subset.empty()) fail(ErrorCode::kInvalidArgument, "subset S must be non-empty");
  std::set<std::size_t> seen;
  for (std::size_t i : subset) {
    if (i >= spec.size())
      fail(ErrorCode::kInvalidArgument, "subset index " + std::to_string(i + 1) +
                                            " exceeds L = " + std::to_string(spec.size()));
    if (!seen.insert(i).second)
      fail(ErrorCode::kInvalidArgument, "subset index " + std::to_string(i + 1) + " repeated");
  }
  const DenseOperator id = DenseOperator::identity(chi.dim());
  std::vector<std::pair<std::size_t, const DenseOperator*>> plan;
  for (std::size_t i = 0; i < spec.size(); ++i) plan.emplace_back(i, &id);
  for (std::size_t i : subset) plan.emplace_back(i, &chi);
  return build_tensor_set(spec, plan, tag_of(spec, "subset(|S|=" + std::to_string(subset.size()) + ")"),
                          policy);
}

GeneratorSpec tensor_q(const GeneratorSpec& spec, const DenseOperator& q,
                       const TensorQOptions& options, const TolerancePolicy& policy) {
  require_hermitian(q, "Q");
  if (q.matrix().cwiseAbs().maxCoeff() <= policy.absolute_floor)
    fail(ErrorCode::kInvalidArgument, "Q must be non-zero");
  if (options.require_sign_unambiguous && !sign_unambiguous(q, policy))
    fail(ErrorCode::kSignAmbiguous, "Q is sign-ambiguous: its spectrum contains a pair lambda, -lambda");
  if (options.require_nonzero_spectrum) {
    const SpectralDecomposition d = hermitian_eig(q, policy);
    double radius = 0.0;
    for (double v : d.eigenvalues) radius = std::max(radius, std::abs(v));
    for (double v : d.eigenvalues)
      if (std::abs(v) <= policy.eig_group_threshold * radius)
        fail(ErrorCode::kPreconditionFailed, "Q has a zero eigenvalue");
  }
  std::vector<std::pair<std::size_t, const DenseOperator*>> plan;
  for (std::size_t i = 0; i < spec.size(); ++i) plan.emplace_back(i, &q);
  return build_tensor_set(spec, plan, tag_of(spec, "tensor-q"), policy);
}

// ---------------------------------------------------------------------------
// Graphs and QAOA families
// ---------------------------------------------------------------------------

void Graph::validate() const {
  if (vertices < 2) fail(ErrorCode::kMalformedInput, "graph needs at least two vertices");
  if (edges.empty()) fail(ErrorCode::kMalformedInput, "graph has no edges");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : edges) {
    if (u >= vertices || v >= vertices)
      fail(ErrorCode::kMalformedInput, "edge (" + std::to_string(u + 1) + "," +
                                           std::to_string(v + 1) + ") out of range");
    if (u == v) fail(ErrorCode::kMalformedInput, "self-loop at vertex " + std::to_string(u + 1));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      fail(ErrorCode::kMalformedInput, "duplicate edge (" + std::to_string(u + 1) + "," +
                                           std::to_string(v + 1) + ")");
  }
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) fail(ErrorCode::kInvalidArgument, "cycle graphs need n >= 3");
  Graph g{n, {}};
  for (std::size_t v = 0; v < n; ++v) g.edges.emplace_back(v, (v + 1) % n);
  return g;
}

Graph Graph::complete(std::size_t n) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "complete graphs need n >= 2");
  Graph g{n, {}};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  return g;
}

Graph Graph::path(std::size_t n) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "path graphs need n >= 2");
  Graph g{n, {}};
  for (std::size_t v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
  return g;
}

Graph Graph::named(std::string_view name) {
  std::size_t split = 0;
  while (split < name.size() && std::isalpha(static_cast<unsigned char>(name[split]))) ++split;
  const std::string kind(name.substr(0, split));
  const std::string digits(name.substr(split));
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(ErrorCode::kMalformedInput, "unknown graph name '" + std::string(name) + "'");
  const std::size_t n = std::stoul(digits);
  if (kind == "cycle" || kind == "C") return cycle(n);
  if (kind == "complete" || kind == "K") return complete(n);
  if (kind == "path" || kind == "P") return path(n);
  fail(ErrorCode::kMalformedInput, "unknown graph family '" + kind + "'");
}

std::string_view to_string(QaoaFamily family) {
  return family == QaoaFamily::kMaxCut ? "maxcut" : "sn_equivariant";
}

QaoaFamily parse_qaoa_family(std::string_view text) {
  if (text == "maxcut" || text == "M") return QaoaFamily::kMaxCut;
  if (text == "sn_equivariant" || text == "sn-equivariant" || text == "S")
    return QaoaFamily::kSnEquivariant;
  fail(ErrorCode::kMalformedInput, "unknown QAOA family '" + std::string(text) + "'");
}

GeneratorSpec qaoa_generators(const Graph& graph, QaoaFamily family) {
  graph.validate();
  const std::size_t n = graph.vertices;
  auto single_sum = [n](Pauli p) {
    std::vector<PauliCombination::Entry> e;
    for (std::size_t j = 0; j < n; ++j) e.push_back({PauliTerm::single(n, j, p), 1.0});
    return PauliCombination::from_entries(n, std::move(e));
  };
  std::vector<PauliCombination::Entry> zz;
  for (auto [u, v] : graph.edges) {
    PauliTerm t(n);
    t.set(u, Pauli::Z);
    t.set(v, Pauli::Z);
    zz.push_back({std::move(t), 1.0});
  }
  PauliCombination coupling = PauliCombination::from_entries(n, std::move(zz));
  std::vector<PauliCombination> gens;
  gens.push_back(single_sum(Pauli::X));
  if (family == QaoaFamily::kSnEquivariant) gens.push_back(single_sum(Pauli::Y));
  gens.push_back(std::move(coupling));
  return GeneratorSpec::from_pauli(std::move(gens), std::string(to_string(family)));
}

// ---------------------------------------------------------------------------
// Cyclicity
// ---------------------------------------------------------------------------

bool CyclicityReport::cyclic() const {
  return std::all_of(noncommuting_pairs.begin(), noncommuting_pairs.end(),
                     [](const PairExtension& p) { return p.extension.has_value(); });
}

namespace {

// Depth-first enumeration of extensions of exactly `length`, in
// lexicographic order; values are built incrementally along the path.
template <class Op>
bool search_extension(std::span<const Op> gens, const Op& start, const Op& current,
                      std::size_t remaining, std::vector<std::size_t>& path,
                      const TolerancePolicy& policy) {
  if (remaining == 0) return proportional<Op>(current, start, policy);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Op next = commutator(gens[k], current);
    if (hs_norm(next) <= policy.absolute_floor) continue;  // zero is never proportional
    path.push_back(k);
    if (search_extension<Op>(gens, start, next, remaining - 1, path, policy)) return true;
    path.pop_back();
  }
  return false;
}

template <class Op>
CyclicityReport detect_cyclic_impl(std::span<const Op> gens, std::size_t max_length,
                                   const TolerancePolicy& policy) {
  CyclicityReport report;
  report.search_depth_cap = max_length;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Op start = commutator(gens[j], gens[i]);
      if (hs_norm(start) <= policy.absolute_floor * std::max(1.0, hs_norm(gens[i]) * hs_norm(gens[j])))
        continue;
      PairExtension pe{i, j, std::nullopt};
      for (std::size_t len = 1; len <= max_length && !pe.extension; ++len) {
        std::vector<std::size_t> path;
        if (search_extension<Op>(gens, start, start, len, path, policy)) pe.extension = path;
      }
      report.noncommuting_pairs.push_back(std::move(pe));
    }
  }
  if (!report.noncommuting_pairs.empty() && report.cyclic()) {
    std::size_t m = 1;
    for (const auto& p : report.noncommuting_pairs) m = std::lcm(m, *p.length());
    report.common_cycle_length = m;
  }
  return report;
}

}  // namespace

CyclicityReport detect_cyclic(const GeneratorSpec& spec, std::size_t max_extension_length,
                              const TolerancePolicy& policy) {
  if (max_extension_length == 0)
    fail(ErrorCode::kInvalidArgument, "extension search depth must be positive");
  return spec.visit([&](auto gens) {
    using Op = typename decltype(gens)::value_type;
    return detect_cyclic_impl<Op>(gens, max_extension_length, policy);
  });
}

FourLambdaResult verify_4lambda_identity(const DenseOperator& a, const DenseOperator& b,
                                         double tol) {
  if (a.dim() != b.dim()) fail(ErrorCode::kDimensionMismatch, "4-lambda identity: dimensions differ");
  const auto lambda = square_scalar_check(a);
  if (!lambda) fail(ErrorCode::kPreconditionFailed, "a^2 is not a multiple of the identity");
  if (!(*lambda < 0)) fail(ErrorCode::kPreconditionFailed, "a^2 = lambda I needs lambda < 0");
  FourLambdaResult out;
  out.lambda = *lambda;
  const DenseOperator ab = dense_commutator(a, b);
  const double n = hs_norm(ab);
  if (n <= 1e-14 * std::max(1.0, hs_norm(a) * hs_norm(b))) {
    out.holds = true;  // vacuous
    return out;
  }
  const DenseOperator triple = dense_commutator(a, dense_commutator(a, ab));
  out.relative_residual = hs_norm(triple - (4.0 * out.lambda) * ab) / n;
  out.holds = out.relative_residual < tol;
  return out;
}

FourLambdaResult verify_4lambda_identity(const PauliCombination& a, const PauliCombination& b,
                                         double tol) {
  return verify_4lambda_identity(to_dense(a), to_dense(b), tol);
}

// ---------------------------------------------------------------------------
// Random inputs
// ---------------------------------------------------------------------------

PauliTerm random_pauli_term(std::size_t qubits, std::mt19937_64& rng) {
  if (qubits == 0) fail(ErrorCode::kInvalidArgument, "random Pauli term needs qubits >= 1");
  std::uniform_int_distribution<int> letter(0, 3);
  for (;;) {
    PauliTerm t(qubits);
    for (std::size_t k = 0; k < qubits; ++k) t.set(k, static_cast<Pauli>(letter(rng)));
    if (!t.is_identity()) return t;
  }
}

std::vector<PauliCombination> random_connected_pauli_set(std::size_t qubits, std::size_t count,
                                                         std::mt19937_64& rng) {
  if (count == 0) fail(ErrorCode::kInvalidArgument, "random set needs count >= 1");
  if (count > (std::size_t{1} << (2 * std::min<std::size_t>(qubits, 15))) - 1)
    fail(ErrorCode::kInvalidArgument, "more Pauli strings requested than exist");
  for (;;) {
    std::vector<PauliTerm> terms;
    while (terms.size() < count) {
      PauliTerm t = random_pauli_term(qubits, rng);
      if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(std::move(t));
    }
    if (!anticommutation_graph(std::span<const PauliTerm>(terms)).connected) continue;
    std::vector<PauliCombination> out;
    for (const auto& t : terms) out.push_back(PauliCombination::from_term(t));
    return out;
  }
}

std::vector<PauliCombination> random_two_generator_set(std::size_t qubits, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_combination = [&] {
    for (;;) {
      std::vector<PauliCombination::Entry> e;
      const int m = count(rng);
      for (int k = 0; k < m; ++k) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        e.push_back({random_pauli_term(qubits, rng), static_cast<double>(c)});
      }
      PauliCombination a = PauliCombination::from_entries(qubits, std::move(e));
      if (!a.empty()) return a;
    }
  };
  for (;;) {
    std::vector<PauliCombination> gens{random_combination(), random_combination()};
    std::vector<PauliCombination> basis;
    bool independent = true;
    for (const auto& g : gens) {
      auto r = orthonormal_extend<PauliCombination>(basis, g);
      if (!r.extended()) {
        independent = false;
        break;
      }
      basis.push_back(std::move(*r.element));
    }
    if (independent) return gens;
  }
}

}  // namespace dla
