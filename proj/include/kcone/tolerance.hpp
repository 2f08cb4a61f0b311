#pragma once

namespace kcone {

/// Numerical thresholds shared across the library.
///
/// rank_tol is relative: a singular value counts as nonzero when it exceeds
/// rank_tol times the largest singular value. defect_tol is an absolute bound
/// on identity defects. fd_step is the step used by finite-difference
/// cross-checks.
struct TolerancePolicy {
  double rank_tol = 1e-8;
  double defect_tol = 1e-8;
  double fd_step = 1e-4;

  void validate() const;
};

}  // namespace kcone
