#include <trfds/stationarity.hpp>

#include <trfds/errors.hpp>
#include <trfds/projections.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace trfds {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

double linear_min_projected_gradient(const Vector& g, const Vector& x, const FeasibleSet& set,
                                     double r) {
  auto project_c = [&](const Vector& z) { return project_step_set(z, set, x, r); };
  const double gnorm = g.norm();
  const double step = r / gnorm;

  Vector s = project_c(-(r / gnorm) * g);
  double value = g.dot(s);
  int stagnant = 0;
  for (int it = 0; it < 20000 && stagnant < 2; ++it) {
    s = project_c(s - step * g);
    const double next = g.dot(s);
    if (std::abs(value - next) <= 1e-10 * std::max(1.0, std::abs(value)))
      ++stagnant;
    else
      stagnant = 0;
    value = next;
  }
  return value;
}

} // namespace

double eta_measure(const Vector& g, const Vector& x, const FeasibleSet& set, double r) {
  require(r > 0.0, "eta_measure: r must be positive");
  require(set.contains(x), "eta_measure: x must be feasible");
  if (set.kind() == FeasibleSet::Kind::AllSpace) return g.norm();
  if (g.norm() == 0.0) return 0.0;
  const double min_value = linear_min_projected_gradient(g, x, set, r);
  return std::max(0.0, -min_value) / r;
}

double psi_measure(const Problem& problem, const Vector& x, double r) {
  return eta_measure(problem.exact_gradient(x), x, problem.feasible_set(), r);
}

StationarityReport measure_gap(const Problem& problem, const Vector& x, const Vector& g,
                               double r, double tau, double L) {
  StationarityReport report;
  report.r = r;
  report.eta = eta_measure(g, x, problem.feasible_set(), r);
  const double psi = psi_measure(problem, x, r);
  report.psi = psi;
  const double gap = std::abs(psi - report.eta);
  report.gap = gap;
  const double bound = 0.5 * L * tau * std::sqrt(static_cast<double>(problem.dimension()));
  report.gap_bound = bound;
  report.gap_within_bound = gap <= bound + 1e-10;
  return report;
}

double eta_bruteforce(const Vector& g, const Vector& x, const FeasibleSet& set, double r,
                      int samples_per_axis) {
  const Index n = x.size();
  require(n >= 1 && n <= 3, "eta_bruteforce supports dimensions 1..3");
  require(r > 0.0, "eta_bruteforce: r must be positive");
  if (set.kind() == FeasibleSet::Kind::AllSpace) return g.norm();

  const int k = samples_per_axis > 0 ? samples_per_axis : (n <= 2 ? 1000 : 60);

  // Bounding box of the candidate region in step space.
  Vector lo = Vector::Constant(n, -r), hi = Vector::Constant(n, r);
  if (set.kind() == FeasibleSet::Kind::Box) {
    lo = lo.cwiseMax(set.lower() - x);
    hi = hi.cwiseMin(set.upper() - x);
  } else {
    const Vector c = set.center() - x;
    lo = lo.cwiseMax((c.array() - set.radius()).matrix());
    hi = hi.cwiseMin((c.array() + set.radius()).matrix());
  }

  double min_value = 0.0;  // s = 0 is always feasible
  const double r_slack = r * (1.0 + 1e-12);
  // Membership is tested in step space with an ulp-scale slack: exact
  // candidates such as face/shell intersections must not be lost to the
  // rounding of x + s.
  Vector tol(n);
  for (Index i = 0; i < n; ++i)
    tol[i] = 1e-12 * (1.0 + std::max(std::abs(lo[i]), std::abs(hi[i])) + std::abs(x[i]));
  auto consider = [&](const Vector& s) {
    if (s.norm() > r_slack) return;
    for (Index i = 0; i < n; ++i)
      if (s[i] < lo[i] - tol[i] || s[i] > hi[i] + tol[i]) return;
    if (set.kind() == FeasibleSet::Kind::Ball && (x + s - set.center()).norm() > set.radius() * (1.0 + 1e-12))
      return;
    min_value = std::min(min_value, g.dot(s));
  };

  // Regular lattice, endpoints included so box faces and vertices are hit
  // exactly.
  auto axis_value = [&](Index i, int j) {
    return lo[i] + (hi[i] - lo[i]) * static_cast<double>(j) / static_cast<double>(k);
  };
  Vector s(n);
  if (n == 1) {
    for (int j = 0; j <= k; ++j) {
      s[0] = axis_value(0, j);
      consider(s);
    }
  } else if (n == 2) {
    for (int j0 = 0; j0 <= k; ++j0)
      for (int j1 = 0; j1 <= k; ++j1) {
        s[0] = axis_value(0, j0);
        s[1] = axis_value(1, j1);
        consider(s);
      }
  } else {
    for (int j0 = 0; j0 <= k; ++j0)
      for (int j1 = 0; j1 <= k; ++j1)
        for (int j2 = 0; j2 <= k; ++j2) {
          s[0] = axis_value(0, j0);
          s[1] = axis_value(1, j1);
          s[2] = axis_value(2, j2);
          consider(s);
        }
  }

  // Shell of the trust ball ||s|| = r.
  auto sphere_samples = [&](const Vector& center, double radius) {
    if (n == 1) {
      for (const double sign : {-1.0, 1.0}) {
        s[0] = center[0] + sign * radius;
        consider(s);
      }
    } else if (n == 2) {
      const int m = 4 * k;
      for (int j = 0; j < m; ++j) {
        const double a = 2.0 * kPi * j / m;
        s[0] = center[0] + radius * std::cos(a);
        s[1] = center[1] + radius * std::sin(a);
        consider(s);
      }
    } else {
      const int mt = 4 * k, mp = 2 * k;
      for (int jt = 0; jt < mt; ++jt)
        for (int jp = 0; jp <= mp; ++jp) {
          const double a = 2.0 * kPi * jt / mt;
          const double b = kPi * jp / mp;
          s[0] = center[0] + radius * std::sin(b) * std::cos(a);
          s[1] = center[1] + radius * std::sin(b) * std::sin(a);
          s[2] = center[2] + radius * std::cos(b);
          consider(s);
        }
    }
  };
  sphere_samples(Vector::Zero(n), r);
  if (set.kind() == FeasibleSet::Kind::Ball) sphere_samples(Vector(set.center() - x), set.radius());

  // Box faces: pin one coordinate to a bound, lattice over the rest, and
  // add the exact face/shell intersection points (the linear objective's
  // minimizer can sit exactly there).
  if (set.kind() == FeasibleSet::Kind::Box) {
    for (Index pin = 0; pin < n; ++pin) {
      for (const bool at_lower : {true, false}) {
        const double pinned = (at_lower ? set.lower()[pin] : set.upper()[pin]) - x[pin];
        if (pinned < -r || pinned > r) continue;
        s[pin] = pinned;
        if (n == 1) {
          consider(s);
        } else if (n == 2) {
          const Index free0 = pin == 0 ? 1 : 0;
          for (int j = 0; j <= k; ++j) {
            s[free0] = axis_value(free0, j);
            consider(s);
          }
          const double rest = r * r - pinned * pinned;
          if (rest >= 0.0) {
            for (const double sign : {-1.0, 1.0}) {
              s[free0] = sign * std::sqrt(rest);
              consider(s);
            }
          }
        } else {
          const Index free0 = pin == 0 ? 1 : 0;
          const Index free1 = pin == 2 ? 1 : 2;
          for (int j0 = 0; j0 <= k; ++j0)
            for (int j1 = 0; j1 <= k; ++j1) {
              s[free0] = axis_value(free0, j0);
              s[free1] = axis_value(free1, j1);
              consider(s);
            }
          // Shell circle on this face.
          const double rest = r * r - pinned * pinned;
          if (rest >= 0.0) {
            const double rad = std::sqrt(rest);
            const int mc = 4 * k;
            for (int a = 0; a < mc; ++a) {
              const double ang = 2.0 * kPi * a / mc;
              s[free0] = rad * std::cos(ang);
              s[free1] = rad * std::sin(ang);
              consider(s);
            }
          }
          // Shell points on the edges of this face.
          for (const Index other : {free0, free1}) {
            const Index last = other == free0 ? free1 : free0;
            for (const bool other_lower : {true, false}) {
              const double c2 = (other_lower ? set.lower()[other] : set.upper()[other]) - x[other];
              const double rest2 = r * r - pinned * pinned - c2 * c2;
              if (rest2 < 0.0) continue;
              s[other] = c2;
              for (const double sign : {-1.0, 1.0}) {
                s[last] = sign * std::sqrt(rest2);
                consider(s);
              }
            }
          }
        }
      }
    }
  }

  // Trust-shell and Omega-shell intersection (two circles) in 2-D.
  if (set.kind() == FeasibleSet::Kind::Ball && n == 2) {
    const Vector q = set.center() - x;
    const double d = q.norm();
    const double R = set.radius();
    if (d > 0.0) {
      const double a = (r * r - R * R + d * d) / (2.0 * d);
      const double h2 = r * r - a * a;
      if (h2 >= 0.0) {
        const double h = std::sqrt(h2);
        const Vector base = (a / d) * q;
        Vector perp(2);
        perp << -q[1] / d, q[0] / d;
        consider(Vector(base + h * perp));
        consider(Vector(base - h * perp));
      }
    }
  }

  return std::max(0.0, -min_value) / r;
}

} // namespace trfds
