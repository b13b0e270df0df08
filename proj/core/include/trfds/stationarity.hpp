#pragma once

#include <trfds/feasible_set.hpp>
#include <trfds/problem.hpp>
#include <trfds/types.hpp>

#include <optional>

namespace trfds {

/// Diagnostic stationarity report at radius r: the approximate measure
/// eta (from a gradient estimate g), the exact measure psi when an exact
/// gradient is available, their gap, and the finite-difference bound the
/// gap is checked against.
struct StationarityReport {
  double r = 0.0;
  double eta = 0.0;
  std::optional<double> psi;
  std::optional<double> gap;       // |psi - eta|
  std::optional<double> gap_bound; // (L/2) tau sqrt(n)
  bool gap_within_bound = true;
};

/// Approximate stationarity measure
///   eta_r(x) = (1/r) (-min{ <g, s> : s in Omega - {x}, ||s|| <= r }).
/// Closed form ||g|| on the whole space; projected gradient with Dykstra
/// projections otherwise (objective-stagnation tolerance 1e-10).
double eta_measure(const Vector& g, const Vector& x, const FeasibleSet& set, double r);

/// Exact stationarity measure psi_r(x): eta_r with the exact gradient.
/// Throws when the problem has no exact-gradient oracle.
double psi_measure(const Problem& problem, const Vector& x, double r);

/// Full report including the |psi - eta| <= (L/2) tau sqrt(n) check.
StationarityReport measure_gap(const Problem& problem, const Vector& x, const Vector& g,
                               double r, double tau, double L);

/// Dense-sampling reference for eta in dimension <= 3: a regular lattice
/// over the feasible directions plus boundary enrichment (sphere shell
/// and box faces), so lattice error is second order in the pitch. The
/// lattice has `samples_per_axis` points per axis (default 500 in 2-D,
/// 60 in 3-D when 0 is passed).
double eta_bruteforce(const Vector& g, const Vector& x, const FeasibleSet& set, double r,
                      int samples_per_axis = 0);

} // namespace trfds
