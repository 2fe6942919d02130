#include "dla/closure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dla/error.hpp"

namespace dla {

std::string Provenance::to_string() const {
  if (pair) return "[e" + std::to_string(pair->first) + ",e" + std::to_string(pair->second) + "]";
  if (sequence.empty()) return "center";
  // Render right-nested: [A_sk,[...,[A_s1,A_s0]]].
  std::string inner = "A" + std::to_string(sequence.front());
  for (std::size_t j = 1; j < sequence.size(); ++j)
    inner = "[A" + std::to_string(sequence[j]) + "," + inner + "]";
  return inner;
}

std::size_t ambient_dimension(const PauliCombination& sample) {
  const std::size_t n = sample.qubit_count();
  if (n >= 31) return std::numeric_limits<std::size_t>::max();
  return (std::size_t{1} << (2 * n)) - 1;
}

std::size_t ambient_dimension(const DenseOperator& sample) {
  const auto d = static_cast<std::size_t>(sample.dim());
  return d * d - 1;
}

namespace {

void check_generator(const PauliCombination& a, std::size_t index, std::size_t qubits) {
  if (a.qubit_count() != qubits)
    fail(ErrorCode::kDimensionMismatch, "generator " + std::to_string(index) + " acts on " +
                                            std::to_string(a.qubit_count()) + " qubits, expected " +
                                            std::to_string(qubits));
  if (!a.is_traceless())
    fail(ErrorCode::kNotTraceless, "generator " + std::to_string(index) +
                                       " has a non-zero identity component");
  // i * (real combination of Hermitian strings) is anti-Hermitian by construction.
}

void check_generator(const DenseOperator& a, std::size_t index, Eigen::Index dim) {
  if (a.dim() != dim)
    fail(ErrorCode::kDimensionMismatch, "generator " + std::to_string(index) + " has dimension " +
                                            std::to_string(a.dim()) + ", expected " +
                                            std::to_string(dim));
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  if (a.anti_hermiticity_defect() > 1e-12 * scale)
    fail(ErrorCode::kNotAntiHermitian, "generator " + std::to_string(index) +
                                           " is not anti-Hermitian");
  if (std::abs(a.trace()) > 1e-10 * scale * static_cast<double>(dim))
    fail(ErrorCode::kNotTraceless, "generator " + std::to_string(index) + " is not traceless");
}

std::size_t space_size(const PauliCombination& a) { return a.qubit_count(); }
Eigen::Index space_size(const DenseOperator& a) { return a.dim(); }

template <class Op>
std::size_t resolve_max_dim(std::span<const Op> generators, const ClosureCaps& caps) {
  return caps.max_dim != 0 ? caps.max_dim : ambient_dimension(generators.front());
}

// Seeds the basis with the orthonormalized generators.
template <class Op>
LieBasis<Op> seed_basis(std::span<const Op> generators, std::size_t max_dim,
                        const TolerancePolicy& policy) {
  LieBasis<Op> out;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    auto r = orthonormal_extend<Op>(out.elements, generators[k], policy);
    if (!r.extended())
      fail(ErrorCode::kDependentGenerators,
           "generator " + std::to_string(k) + " lies in the span of the preceding generators");
    if (out.size() == max_dim) {
      out.capped = true;
      return out;
    }
    out.elements.push_back(std::move(*r.element));
    out.provenance.push_back(Provenance{{k}, std::nullopt});
    out.values.push_back(scaled(generators[k], 1.0 / r.candidate_norm));
  }
  return out;
}

}  // namespace

template <class Op>
void validate_generators(std::span<const Op> generators, const TolerancePolicy& policy) {
  policy.validate();
  if (generators.empty()) fail(ErrorCode::kInvalidArgument, "generator list is empty");
  const auto size = space_size(generators.front());
  for (std::size_t k = 0; k < generators.size(); ++k) {
    check_generator(generators[k], k, size);
    if (hs_norm(generators[k]) <= policy.absolute_floor)
      fail(ErrorCode::kDependentGenerators, "generator " + std::to_string(k) + " is zero");
  }
  std::vector<Op> basis;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    auto r = orthonormal_extend<Op>(basis, generators[k], policy);
    if (!r.extended())
      fail(ErrorCode::kDependentGenerators,
           "generator " + std::to_string(k) + " lies in the span of the preceding generators");
    basis.push_back(std::move(*r.element));
  }
}

template <class Op>
Op evaluate_sequence(std::span<const Op> generators, std::span<const std::size_t> sequence) {
  if (sequence.empty()) fail(ErrorCode::kInvalidArgument, "empty generator sequence");
  for (std::size_t s : sequence)
    if (s >= generators.size())
      fail(ErrorCode::kInvalidArgument, "sequence index " + std::to_string(s) + " out of range");
  Op v = generators[sequence.front()];
  for (std::size_t j = 1; j < sequence.size(); ++j) v = commutator(generators[sequence[j]], v);
  return v;
}

template <class Op>
LieBasis<Op> lie_closure(std::span<const Op> generators, const ClosureCaps& caps,
                         const TolerancePolicy& policy) {
  validate_generators<Op>(generators, policy);
  const std::size_t max_dim = resolve_max_dim<Op>(generators, caps);
  LieBasis<Op> out = seed_basis<Op>(generators, max_dim, policy);
  if (out.capped) return out;

  std::size_t frontier_begin = 0;
  std::size_t frontier_end = out.size();
  while (frontier_begin < frontier_end) {
    if (out.rounds == caps.max_rounds) {
      out.capped = true;
      return out;
    }
    ++out.rounds;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      for (std::size_t k = frontier_begin; k < frontier_end; ++k) {
        Op candidate = commutator(generators[i], out.values[k]);
        auto r = orthonormal_extend<Op>(out.elements, candidate, policy);
        if (!r.extended()) continue;
        if (out.size() == max_dim) {
          out.capped = true;
          return out;
        }
        out.elements.push_back(std::move(*r.element));
        out.values.push_back(scaled(candidate, 1.0 / r.candidate_norm));
        Provenance p = out.provenance[k];
        p.sequence.push_back(i);
        out.provenance.push_back(std::move(p));
      }
    }
    frontier_begin = frontier_end;
    frontier_end = out.size();
  }
  return out;
}

template <class Op>
LieBasis<Op> all_pairs_closure_oracle(std::span<const Op> generators, const ClosureCaps& caps,
                                      const TolerancePolicy& policy) {
  validate_generators<Op>(generators, policy);
  const std::size_t max_dim = resolve_max_dim<Op>(generators, caps);
  LieBasis<Op> out = seed_basis<Op>(generators, max_dim, policy);
  if (out.capped) return out;

  // Pairs (p, q) with p < q and q >= done have not been commuted yet.
  std::size_t done = 0;
  while (done < out.size()) {
    if (out.rounds == caps.max_rounds) {
      out.capped = true;
      return out;
    }
    ++out.rounds;
    const std::size_t end = out.size();
    for (std::size_t q = std::max<std::size_t>(done, 1); q < end; ++q) {
      for (std::size_t p = 0; p < q; ++p) {
        Op candidate = commutator(out.values[p], out.values[q]);
        auto r = orthonormal_extend<Op>(out.elements, candidate, policy);
        if (!r.extended()) continue;
        if (out.size() == max_dim) {
          out.capped = true;
          return out;
        }
        out.elements.push_back(std::move(*r.element));
        out.values.push_back(scaled(candidate, 1.0 / r.candidate_norm));
        out.provenance.push_back(Provenance{{}, std::make_pair(p, q)});
      }
    }
    done = end;
  }
  return out;
}

template <class Op>
LieBasis<Op> commutator_subalgebra(const LieBasis<Op>& basis, std::span<const Op> generators,
                                   const TolerancePolicy& policy, std::size_t* all_pairs_dim) {
  if (basis.capped)
    fail(ErrorCode::kCappedBasis, "commutator subalgebra needs a completed closure");
  // Route B: span{[A_i, e_k]}. [g,g] is spanned by right-nested brackets of
  // length >= 2, each of the form [A_i, x] with x in g = span{e_k}.
  const std::vector<Op>& span_set =
      basis.values.size() == basis.size() ? basis.values : basis.elements;
  LieBasis<Op> out;
  out.rounds = basis.rounds;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Op candidate = commutator(generators[i], span_set[k]);
      auto r = orthonormal_extend<Op>(out.elements, candidate, policy);
      if (!r.extended()) continue;
      out.elements.push_back(std::move(*r.element));
      Provenance p = basis.provenance[k];
      p.sequence.push_back(i);
      out.provenance.push_back(std::move(p));
    }
  }

  // Route A: span{[e_p, e_q]}. It always contains route B (the generators
  // lie in g), so the two agree iff every [e_p, e_q] lies in route B. The
  // residual is read off the orthonormal coordinates, which avoids building
  // a second basis from all pairs.
  double worst = 0.0;
  std::size_t worst_p = 0, worst_q = 0;
  for (std::size_t q = 1; q < basis.size(); ++q) {
    for (std::size_t p = 0; p < q; ++p) {
      const Op x = commutator(span_set[p], span_set[q]);
      const double norm2 = hs_inner(x, x);
      if (norm2 <= policy.absolute_floor * policy.absolute_floor) continue;
      double captured = 0.0;
      for (const Op& e : out.elements) {
        const double c = hs_inner(e, x);
        captured += c * c;
      }
      const double residual = std::sqrt(std::max(0.0, 1.0 - captured / norm2));
      if (residual > worst) {
        worst = residual;
        worst_p = p;
        worst_q = q;
      }
    }
  }
  // Squared coordinates resolve residuals down to about 1e-7.
  const double limit = std::max(std::sqrt(policy.rank_threshold), 1e-6);
  if (worst > limit)
    fail(ErrorCode::kPreconditionFailed,
         "commutator subalgebra routes disagree: [e_" + std::to_string(worst_p) + ", e_" +
             std::to_string(worst_q) + "] leaves span{[A_i, e_k]} (residual " +
             std::to_string(worst) + ")");
  if (all_pairs_dim) *all_pairs_dim = out.size();
  return out;
}

template <class Op>
LieBasis<Op> center(const LieBasis<Op>& basis, std::span<const Op> generators,
                    const TolerancePolicy& policy) {
  if (basis.capped) fail(ErrorCode::kCappedBasis, "center needs a completed closure");
  LieBasis<Op> out;
  out.rounds = basis.rounds;
  if (basis.size() == 0) return out;

  // Stack, per generator, the coordinates of [A_i, e_k] as columns k; the
  // center is the null space of the stacked matrix.
  std::vector<Eigen::MatrixXd> blocks;
  Eigen::Index rows = 0;
  for (const Op& a : generators) {
    std::vector<Op> images;
    images.reserve(basis.size());
    for (const Op& e : basis.elements) images.push_back(commutator(a, e));
    blocks.push_back(coordinate_matrix(std::span<const Op>(images)));
    rows += blocks.back().rows();
  }
  const auto cols = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd stacked(rows, cols);
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    stacked.middleRows(r, b.rows()) = b;
    r += b.rows();
  }

  Eigen::MatrixXd kernel;
  if (rows == 0 || stacked.cwiseAbs().maxCoeff() <= policy.absolute_floor) {
    kernel = Eigen::MatrixXd::Identity(cols, cols);
  } else {
    kernel = null_space(stacked, policy.rank_threshold, policy.absolute_floor);
  }

  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Op z = scaled(basis.elements[0], kernel(0, c));
    for (Eigen::Index k = 1; k < cols; ++k)
      if (kernel(k, c) != 0.0) axpy(z, kernel(k, c), basis.elements[static_cast<std::size_t>(k)]);
    auto ext = orthonormal_extend<Op>(out.elements, z, policy);
    if (!ext.extended()) continue;
    out.elements.push_back(std::move(*ext.element));
    out.provenance.push_back(Provenance{});
  }
  return out;
}

template <class Op>
double containment_residual(std::span<const Op> of, std::span<const Op> into,
                            const TolerancePolicy& policy) {
  double worst = 0.0;
  for (const Op& x : of) worst = std::max(worst, projection_residual<Op>(into, x, policy));
  return worst;
}

template <class Op>
std::size_t joint_dimension(std::span<const Op> a, std::span<const Op> b,
                            const TolerancePolicy& policy) {
  std::vector<Op> basis;
  for (auto list : {a, b}) {
    for (const Op& x : list) {
      auto r = orthonormal_extend<Op>(basis, x, policy);
      if (r.extended()) basis.push_back(std::move(*r.element));
    }
  }
  return basis.size();
}

template <class Op>
Analysis<Op> analyze_full(std::span<const Op> generators, const ClosureCaps& caps,
                          const TolerancePolicy& policy) {
  Analysis<Op> out;
  ClosureReport& rep = out.report;
  out.g = lie_closure<Op>(generators, caps, policy);
  rep.generator_count = generators.size();
  rep.dim_g = out.g.size();
  rep.capped = out.g.capped;
  rep.rounds = out.g.rounds;
  if (generators.size() == 1)
    rep.warnings.push_back("single generator: the algebra is one-dimensional and abelian");
  if (rep.capped) {
    rep.warnings.push_back("closure capped after " + std::to_string(rep.rounds) + " rounds at " +
                           std::to_string(rep.dim_g) + " elements; report is partial");
    return out;
  }

  out.gg = commutator_subalgebra<Op>(out.g, generators, policy, &rep.dim_gg_all_pairs);
  out.z = center<Op>(out.g, generators, policy);
  rep.dim_gg = out.gg.size();
  rep.dim_center = out.z.size();

  const std::size_t joint = joint_dimension<Op>(generators, out.gg.view(), policy);
  rep.dim_spanA_cap_gg = generators.size() + rep.dim_gg - joint;

  std::vector<Op> gg_plus_z = out.gg.elements;
  for (const Op& z : out.z.elements) {
    auto r = orthonormal_extend<Op>(gg_plus_z, z, policy);
    if (r.extended()) gg_plus_z.push_back(std::move(*r.element));
  }
  rep.reductive_residual = containment_residual<Op>(out.g.view(), gg_plus_z, policy);

  std::vector<Op> a_plus_gg = out.gg.elements;
  for (const Op& a : generators) {
    auto r = orthonormal_extend<Op>(a_plus_gg, a, policy);
    if (r.extended()) a_plus_gg.push_back(std::move(*r.element));
  }
  rep.decomposition_residual = containment_residual<Op>(out.g.view(), a_plus_gg, policy);

  if (rep.dim_g != rep.dim_gg + rep.dim_center)
    rep.warnings.push_back("dim g != dim [g,g] + dim Z(g); numerical rank is ambiguous");
  return out;
}

#define DLA_CLOSURE_INSTANTIATE(Op)                                                        \
  template void validate_generators<Op>(std::span<const Op>, const TolerancePolicy&);      \
  template Op evaluate_sequence<Op>(std::span<const Op>, std::span<const std::size_t>);    \
  template LieBasis<Op> lie_closure<Op>(std::span<const Op>, const ClosureCaps&,           \
                                        const TolerancePolicy&);                           \
  template LieBasis<Op> all_pairs_closure_oracle<Op>(std::span<const Op>,                  \
                                                     const ClosureCaps&,                   \
                                                     const TolerancePolicy&);              \
  template LieBasis<Op> commutator_subalgebra<Op>(const LieBasis<Op>&, std::span<const Op>, \
                                                  const TolerancePolicy&, std::size_t*);   \
  template LieBasis<Op> center<Op>(const LieBasis<Op>&, std::span<const Op>,               \
                                   const TolerancePolicy&);                                \
  template double containment_residual<Op>(std::span<const Op>, std::span<const Op>,       \
                                           const TolerancePolicy&);                        \
  template std::size_t joint_dimension<Op>(std::span<const Op>, std::span<const Op>,       \
                                           const TolerancePolicy&);                        \
  template Analysis<Op> analyze_full<Op>(std::span<const Op>, const ClosureCaps&,          \
                                         const TolerancePolicy&);

DLA_CLOSURE_INSTANTIATE(PauliCombination)
DLA_CLOSURE_INSTANTIATE(DenseOperator)
#undef DLA_CLOSURE_INSTANTIATE

}  // namespace dla
