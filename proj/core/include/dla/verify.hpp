#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dla/closure.hpp"
#include "dla/constructions.hpp"
#include "dla/numeric.hpp"
#include "dla/tolerance.hpp"

namespace dla {

/// Evidence that a computed algebra is the direct sum of K copies of a base
/// algebra, via the explicit basis {U_p (x) Pi_j} built from an orthonormal
/// base basis {U_p} and the spectral projectors {Pi_j}.
struct DirectPowerEvidence {
  std::size_t block_count = 0;
  std::size_t base_dim = 0;
  std::vector<std::size_t> per_block_dim;
  /// Every block lies in the target and the blocks jointly span it.
  bool blocks_span_match = false;
  /// [U_p (x) Pi_i, U_q (x) Pi_j] = 0 for i != j.
  bool pairwise_commuting = false;
  /// Structure constants of each block, read in the transported basis,
  /// equal those of the base basis.
  bool structure_constants_match = false;
  double containment_residual = 0.0;
  double cross_commutator_residual = 0.0;
  double structure_constant_residual = 0.0;

  bool accepted() const;
};

/// Builds the blocks {U_p (x) Pi_j} and checks them against `target`.
/// Throws kCappedBasis on capped inputs.
template <class Op>
DirectPowerEvidence verify_direct_power(const LieBasis<Op>& target, const LieBasis<Op>& base,
                                        const SpectralDecomposition& projectors,
                                        const TolerancePolicy& policy = {}, double tol = 1e-8);

/// Relative residuals of the three containments
///   g' within g (x) span(Pi), [g',g'] within [g,g] (x) span(Pi),
///   Z(g') within Z(g) (x) span(Pi).
struct ContainmentResiduals {
  double closure = 0.0;
  double commutator = 0.0;
  double center = 0.0;

  bool holds(double tol = 1e-8) const {
    return closure < tol && commutator < tol && center < tol;
  }
};

template <class Op>
ContainmentResiduals projector_containment_check(const Analysis<Op>& modified,
                                                 const Analysis<Op>& base,
                                                 const SpectralDecomposition& projectors,
                                                 const TolerancePolicy& policy = {});

/// Largest relative distance of a member of `center` from span{C (x) q : C in base_center}.
template <class Op>
double center_form_residual(const LieBasis<Op>& center, const LieBasis<Op>& base_center,
                            const DenseOperator& q, const TolerancePolicy& policy = {});

enum class TheoremId { kThm1, kThm2, kThm3, kThm4, kThm5, kLemma7, kThm8Identity };

std::string_view to_string(TheoremId id);
/// Accepts "thm1" .. "thm5", "lemma7", "thm8-identity".
TheoremId parse_theorem_id(std::string_view text);

enum class VerdictStatus { kPass, kFail, kNotApplicable, kNumericallyAmbiguous };

std::string_view to_string(VerdictStatus status);

struct TheoremVerdict {
  TheoremId theorem = TheoremId::kThm1;
  /// FNV-1a over the theorem id, the generators and the auxiliary inputs.
  std::string inputs_digest;
  std::map<std::string, std::int64_t> predicted;
  std::map<std::string, std::int64_t> measured;
  std::optional<DirectPowerEvidence> evidence;
  /// Further named checks (containments, identities); all must hold.
  std::map<std::string, bool> checks;
  std::map<std::string, double> residuals;
  VerdictStatus status = VerdictStatus::kFail;
  bool pass = false;
  /// For thm4: the classified row ("in,in", "in,out", "out,in", "out,out")
  /// of the extended generator and the other one, and the row's center value.
  std::optional<std::string> table_row;
  std::optional<std::int64_t> table_center;
  std::vector<std::string> notes;
  /// Wall-clock seconds per phase; excluded from reproducibility guarantees.
  std::map<std::string, double> timings;
};

struct VerifyRequest {
  TheoremId theorem = TheoremId::kThm1;
  GeneratorSpec spec;
  /// chi for thm1-thm4 (default diag(1,2)); Q for thm5 (default diag(1,2)).
  std::optional<DenseOperator> aux;
  /// Extended generator for thm3/thm4 (zero-based, default 0).
  std::size_t index = 0;
  /// thm1 only: use powers chi^0..chi^{q-1} instead of all K.
  std::optional<std::size_t> q_powers;
  ClosureCaps caps;
  TolerancePolicy policy;
};

/// Runs the construction, computes closures under rank thresholds 1e-8 and
/// 1e-10 and compares measured against predicted dimensions. Hypothesis
/// violations produce kNotApplicable; disagreement between the two
/// thresholds produces kNumericallyAmbiguous. Throws kCapExceeded when a
/// closure hits its cap.
TheoremVerdict verify_theorem(const VerifyRequest& request);

/// Digest helper shared with the CLI: 16 hex digits of FNV-1a 64.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace dla
