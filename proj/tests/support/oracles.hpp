#pragma once

// Independent reference oracles for the test and acceptance suites. These
// deliberately avoid the library's solver paths: grids, dual bisection,
// and a plain exact-gradient trust-region method.

#include <trfds/driver.hpp>
#include <trfds/model.hpp>
#include <trfds/problem.hpp>

#include <vector>

namespace trfds::testsupport {

/// Dense-grid minimum of the model over {||d|| <= delta} and (Omega - x)
/// in 2-D: a regular lattice of pitch delta/divisor plus densely sampled
/// ball shell, box edges, and corners, so the error is second order in
/// the pitch.
double grid_model_min(const QuadraticModel& model, double delta, const FeasibleSet& set,
                      const Vector& x, int divisor = 400);

/// Exact min of <g, s> over {lo <= s <= hi} (entries may be infinite)
/// intersected with {||s|| <= r}, by bisection on the ball multiplier of
/// s(lam) = clamp(-g / (2 lam), lo, hi).
double linear_min_box_ball_exact(const Vector& g, const Vector& lo, const Vector& hi, double r);

/// Exact-gradient dogleg BFGS trust-region reference run. Used to confirm
/// a target is attainable before freezing it as a regression threshold.
struct ReferenceRun {
  double best_f = 0.0;
  Vector best_x;
  long iterations = 0;
  long f_evals = 0;
};
ReferenceRun exact_gradient_trust_region(const Problem& problem, long max_iterations);

/// Finite-difference projected gradient descent with Armijo backtracking,
/// capped at budget_evals oracle calls. Returns the best value found.
double fd_projected_descent(const Problem& problem, long budget_evals);

} // namespace trfds::testsupport
