#pragma once

namespace dla {

/// Numerical interpretation of "linearly independent", "equal eigenvalue"
/// and "proportional". All thresholds are relative and strictly positive.
struct TolerancePolicy {
  /// Residual norm / candidate norm below which a candidate is in the span.
  double rank_threshold = 1e-9;
  /// Eigenvalues closer than this times the spectral radius are merged.
  double eig_group_threshold = 1e-8;
  /// u and v are proportional when |<u,v>|/(|u||v|) > 1 - threshold.
  double proportionality_threshold = 1e-9;
  /// Norms below this are treated as exact zero.
  double absolute_floor = 1e-12;

  /// Throws Error(kInvalidArgument) unless every threshold is positive.
  void validate() const;

  static TolerancePolicy with_rank_threshold(double rank) {
    TolerancePolicy p;
    p.rank_threshold = rank;
    return p;
  }
};

}  // namespace dla
