#pragma once

#include <trfds/feasible_set.hpp>
#include <trfds/model.hpp>
#include <trfds/types.hpp>

namespace trfds {

/// Classical Cauchy step for the unconstrained region: minimizes the
/// model along -g inside ||d|| <= delta. Guarantees
/// m(0) - m(d) >= 0.5 ||g|| min{delta, ||g||/||H||}.
TrialStep cauchy_step(const QuadraticModel& model, double delta);

/// Backtracking search along the projected-gradient path
/// s(t) = P_Omega(x - t g) - x (radially truncated to ||s|| <= delta),
/// halving t from delta/||g|| until the model satisfies an Armijo-type
/// decrease m(s) <= m(0) + 0.1 <g, s>. Returns a degenerate zero step
/// when the path never leaves x.
TrialStep generalized_cauchy_step(const QuadraticModel& model, double delta,
                                  const FeasibleSet& set, const Vector& x);

/// Steihaug truncated conjugate gradients for the unconstrained region;
/// never worse than the Cauchy step.
TrialStep truncated_cg(const QuadraticModel& model, double delta);

/// Accelerated projected gradient (FISTA with Dykstra projections onto
/// {||d|| <= delta} intersected with Omega - x), safeguarded by the
/// generalized Cauchy step so the Cauchy-level decrease survives
/// indefinite H. Box steps are clamped so x + d is feasible exactly.
TrialStep projected_accel(const QuadraticModel& model, double delta, const FeasibleSet& set,
                          const Vector& x, const TrialStep& warm);

/// Sufficient-decrease certificate: true iff
/// model_decrease + 1e-10 >= kappa * eta * min{delta, eta / normH}.
/// Diagnostic only; the solver itself never computes eta.
bool decrease_certificate(const TrialStep& step, double eta, double delta, double normH,
                          double kappa);

/// Spectral-norm estimate of a symmetric matrix by power iteration
/// (deterministic start vector).
double power_iteration_norm(const Matrix& H, int iterations = 30);

} // namespace trfds
