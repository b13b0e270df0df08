#pragma once

#include <trfds/types.hpp>

#include <functional>
#include <vector>

namespace trfds {

using OdeRhs = std::function<void(double t, const Vector& y, Vector& dydt)>;

struct Rk45Options {
  double rtol = 1e-8;
  double atol = 1e-10;
  long max_steps = 1000000;
  double initial_step = 0.0;  // 0: automatic selection
  double max_step = 0.0;      // 0: unbounded
};

struct Rk45Stats {
  long steps_accepted = 0;
  long steps_rejected = 0;
  long rhs_evals = 0;
};

/// Adaptive Dormand-Prince 4(5) integration from (t0, y0), producing the
/// solution at the requested strictly increasing times via the standard
/// fourth-order dense-output interpolant. Steps producing non-finite
/// values are rejected; stepsize underflow or step-count exhaustion
/// throws IntegrationError.
///
/// Returns a (times.size() x dim) matrix, one state per row.
Matrix rk45_solve(const OdeRhs& rhs, double t0, const Vector& y0,
                  const std::vector<double>& times, const Rk45Options& options = {},
                  Rk45Stats* stats = nullptr);

} // namespace trfds
