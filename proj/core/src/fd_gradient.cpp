#include <trfds/fd_gradient.hpp>

#include <trfds/errors.hpp>

#include <algorithm>
#include <cmath>

namespace trfds {

double initial_tau(double epsilon, double sigma, Index n) {
  require(epsilon > 0.0 && sigma > 0.0 && n >= 1, "initial_tau needs positive arguments");
  return epsilon / (sigma * std::sqrt(static_cast<double>(n)));
}

FdGradient forward_gradient(const Problem& problem, const Vector& x, double tau, double fx) {
  require(tau > 0.0, "forward_gradient: tau must be positive");
  require(x.size() == problem.dimension(), "forward_gradient: dimension mismatch");
  const Index n = x.size();
  FdGradient out;
  out.g.resize(n);
  out.tau_used.resize(n);
  Vector p = x;
  for (Index i = 0; i < n; ++i) {
    p[i] = x[i] + tau;
    const double step = p[i] - x[i];  // representable stepsize actually taken
    out.g[i] = (problem.evaluate(p) - fx) / step;
    out.tau_used[i] = step;
    p[i] = x[i];
  }
  out.evals_spent = n;
  return out;
}

FdGradient bounded_gradient(const Problem& problem, const Vector& x, double tau, double fx,
                            const FeasibleSet& box) {
  require(tau > 0.0, "bounded_gradient: tau must be positive");
  require(box.kind() == FeasibleSet::Kind::Box, "bounded_gradient needs a box feasible set");
  require(x.size() == problem.dimension(), "bounded_gradient: dimension mismatch");
  require(box.contains(x), "bounded_gradient: x must be feasible");

  const Index n = x.size();
  const Vector& lower = box.lower();
  const Vector& upper = box.upper();
  FdGradient out;
  out.g.resize(n);
  out.tau_used.resize(n);
  Vector p = x;
  for (Index i = 0; i < n; ++i) {
    const double tau_f = std::min(upper[i] - x[i], tau);
    const double tau_b = std::min(x[i] - lower[i], tau);
    if (tau_f <= 0.0 && tau_b <= 0.0)
      throw std::invalid_argument("bounded_gradient: degenerate coordinate " + std::to_string(i));
    // Offset points are clamped into the box and the effective stepsize is
    // the exact coordinate difference, so feasibility is exact and the
    // interior case matches forward_gradient bitwise.
    if (tau_f >= tau_b) {
      p[i] = std::min(x[i] + tau, upper[i]);
      const double step = p[i] - x[i];
      out.g[i] = (problem.evaluate(p) - fx) / step;
      out.tau_used[i] = step;
    } else {
      p[i] = std::max(x[i] - tau, lower[i]);
      const double step = x[i] - p[i];
      out.g[i] = (fx - problem.evaluate(p)) / step;
      out.tau_used[i] = -step;
    }
    p[i] = x[i];
  }
  out.evals_spent = n;
  return out;
}

} // namespace trfds
