#include <trfds/projections.hpp>

#include <trfds/errors.hpp>

#include <atomic>

namespace trfds {

namespace {
std::atomic<long> g_cap_hits{0};
}

long dykstra_cap_hits() { return g_cap_hits.load(); }

DykstraResult dykstra_project(const Vector& z, const std::vector<Projector>& projectors,
                              const DykstraOptions& options) {
  require(!projectors.empty(), "dykstra_project needs at least one projector");
  const size_t m = projectors.size();
  Vector x = z;
  std::vector<Vector> increments(m, Vector::Zero(z.size()));

  DykstraResult result;
  for (int it = 0; it < options.max_iterations; ++it) {
    const Vector x_prev = x;
    for (size_t j = 0; j < m; ++j) {
      const Vector y = x + increments[j];
      x = projectors[j](y);
      increments[j] = y - x;
    }
    result.iterations = it + 1;
    if ((x - x_prev).norm() <= options.tolerance) {
      result.point = std::move(x);
      return result;
    }
  }
  g_cap_hits.fetch_add(1);
  result.converged = false;
  result.point = std::move(x);
  return result;
}

Projector ball_projector(double radius) {
  return [radius](const Vector& d) -> Vector {
    const double nrm = d.norm();
    if (nrm <= radius) return d;
    return (radius / nrm) * d;
  };
}

Projector shifted_set_projector(const FeasibleSet& set, const Vector& x) {
  return [set, x](const Vector& d) -> Vector { return set.project(x + d) - x; };
}

Vector project_step_set(const Vector& z, const FeasibleSet& set, const Vector& x, double delta,
                        const DykstraOptions& options) {
  if (set.kind() == FeasibleSet::Kind::AllSpace) return ball_projector(delta)(z);
  if (set.contains(x + z) && z.norm() <= delta) return z;
  return dykstra_project(z, {ball_projector(delta), shifted_set_projector(set, x)}, options).point;
}

} // namespace trfds
