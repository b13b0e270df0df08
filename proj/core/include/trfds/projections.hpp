#pragma once

#include <trfds/feasible_set.hpp>
#include <trfds/types.hpp>

#include <functional>
#include <vector>

namespace trfds {

using Projector = std::function<Vector(const Vector&)>;

struct DykstraOptions {
  double tolerance = 1e-8;  // stop when the iterate changes by less than this
  int max_iterations = 10000;
};

struct DykstraResult {
  Vector point;
  int iterations = 0;
  bool converged = true;
};

/// Dykstra's alternating-projection scheme for the projection onto an
/// intersection of convex sets, given the individual projectors. Hitting
/// the iteration cap is reported, not thrown; the running total of capped
/// calls is available from dykstra_cap_hits().
DykstraResult dykstra_project(const Vector& z, const std::vector<Projector>& projectors,
                              const DykstraOptions& options = {});

long dykstra_cap_hits();

/// Projector onto {d : ||d|| <= radius} around the origin.
Projector ball_projector(double radius);

/// Projector onto the step set Omega - x of a feasible set, i.e. onto
/// {d : x + d in Omega}.
Projector shifted_set_projector(const FeasibleSet& set, const Vector& x);

/// Projection onto {d : ||d|| <= delta} intersected with (Omega - x).
/// AllSpace and exact single-set cases skip Dykstra.
Vector project_step_set(const Vector& z, const FeasibleSet& set, const Vector& x, double delta,
                        const DykstraOptions& options = {});

} // namespace trfds
