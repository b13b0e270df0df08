#pragma once

#include <trfds/types.hpp>

namespace trfds {

/// Quadratic trust-region model m(d) = f0 + <g, d> + 0.5 <H d, d>.
/// H must be symmetric to machine tolerance and nonzero.
struct QuadraticModel {
  double f0 = 0.0;
  Vector g;
  Matrix H;

  double value(const Vector& d) const { return f0 + g.dot(d) + 0.5 * d.dot(H * d); }
  double decrease(const Vector& d) const { return -(g.dot(d) + 0.5 * d.dot(H * d)); }

  /// Throws std::invalid_argument when the symmetry/nonzero invariants fail.
  void validate() const;
};

enum class StepTag { Cauchy, GeneralizedCauchy, TruncatedCG, ProjectedAccel };

/// Approximate subproblem solution: the step, its model decrease
/// m(0) - m(d), which solver produced it, and whether the projected
/// gradient path was degenerate (model-stationary within the set).
struct TrialStep {
  Vector d;
  double model_decrease = 0.0;
  StepTag solver_tag = StepTag::Cauchy;
  bool degenerate = false;
};

const char* to_string(StepTag tag);

} // namespace trfds
