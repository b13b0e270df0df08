#pragma once

#include <trfds/problem.hpp>
#include <trfds/types.hpp>

namespace trfds {

/// Finite-difference gradient approximation together with the exact
/// per-coordinate stepsizes used (signed: positive means forward,
/// negative means backward) and the oracle cost.
struct FdGradient {
  Vector g;
  Vector tau_used;
  long evals_spent = 0;
};

/// Initial finite-difference stepsize tau0 = epsilon / (sigma sqrt(n)).
double initial_tau(double epsilon, double sigma, Index n);

/// Forward differences: g_i = (f(x + tau e_i) - fx) / tau with n new
/// oracle calls; fx must be the already-evaluated value at x. The
/// stepsize is snapped to the representable difference of the offset
/// point, so tau_used may differ from tau in the last ulp.
FdGradient forward_gradient(const Problem& problem, const Vector& x, double tau, double fx);

/// Forward/backward differences for an unrelaxable box: per coordinate,
/// tauF_i = min{(u - x)_i, tau} and tauB_i = min{(x - l)_i, tau}; the
/// forward difference is used when tauF_i >= tauB_i, the backward one
/// otherwise. All offset points are feasible by construction.
FdGradient bounded_gradient(const Problem& problem, const Vector& x, double tau, double fx,
                            const FeasibleSet& box);

} // namespace trfds
