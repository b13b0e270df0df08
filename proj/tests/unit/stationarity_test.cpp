#include <doctest.h>

#include <trfds/registry.hpp>
#include <trfds/rng.hpp>
#include <trfds/stationarity.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace trfds;

namespace {
Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}
} // namespace

TEST_CASE("eta on the whole space is the gradient norm") {
  CHECK(eta_measure(v2(3, 4), v2(0, 0), FeasibleSet::all_space(), 1.0) == 5.0);
  CHECK(eta_measure(v2(3, 4), v2(0, 0), FeasibleSet::all_space(), 123.0) == 5.0);
}

TEST_CASE("eta on a 1-D box has the closed-form value") {
  const FeasibleSet box = FeasibleSet::box(Vector::Zero(1), Vector::Ones(1));
  const Vector x = Vector::Constant(1, 0.5);
  const Vector g = Vector::Constant(1, 2.0);
  CHECK(eta_measure(g, x, box, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(eta_bruteforce(g, x, box, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("eta projected-gradient solver matches the dense grid in 2-D") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    Vector x = v2(rng.normal(), rng.normal());
    const FeasibleSet box = FeasibleSet::box(
        v2(x[0] - 0.2 - rng.uniform01(), x[1] - 0.2 - rng.uniform01()),
        v2(x[0] + 0.2 + rng.uniform01(), x[1] + 0.2 + rng.uniform01()));
    Vector g = v2(rng.normal(), rng.normal());
    if (g.norm() < 1e-8) continue;
    const double r = 0.3 + 2.0 * rng.uniform01();
    const double pg = eta_measure(g, x, box, r);
    const double grid = eta_bruteforce(g, x, box, r);
    CHECK_MESSAGE(std::abs(pg - grid) <= 1e-4 * std::max(1.0, grid),
                  "trial " << trial << " pg=" << pg << " grid=" << grid);
    // Exact reference by dual bisection on the same instance.
    const double exact =
        -testsupport::linear_min_box_ball_exact(g, box.lower() - x, box.upper() - x, r) / r;
    CHECK(std::abs(pg - exact) <= 1e-6 * std::max(1.0, exact));
  }
}

TEST_CASE("psi vanishes exactly at stationary points") {
  Vector eigs(2);
  eigs << 1.0, 3.0;
  Problem q = make_quadratic("q2", eigs, 5);
  // Interior stationary point of the quadratic is the origin.
  CHECK(psi_measure(q, Vector::Zero(2), 1.0) == 0.0);
  // Nonstationary point.
  CHECK(psi_measure(q, Vector::Ones(2), 1.0) > 0.0);
}

TEST_CASE("psi is zero at a face minimum with inward gradient") {
  // f(x) = (x + 1)^2 on the box [0, 1]: the constrained minimum sits at 0
  // where the gradient points inward-positive, so no feasible direction
  // descends.
  Problem p(Problem::Init{
      .dimension = 1,
      .objective = [](const Vector& x) { return (x[0] + 1.0) * (x[0] + 1.0); },
      .exact_gradient = [](const Vector& x) { return Vector(Vector::Constant(1, 2.0 * (x[0] + 1.0))); },
      .feasible_set = FeasibleSet::box(Vector::Zero(1), Vector::Ones(1)),
      .x0 = Vector::Zero(1),
  });
  CHECK(psi_measure(p, Vector::Zero(1), 0.5) == doctest::Approx(0.0).epsilon(1e-10));
  Problem gradless(Problem::Init{
      .dimension = 1,
      .objective = [](const Vector& x) { return x[0] * x[0]; },
      .x0 = Vector::Zero(1),
  });
  CHECK_THROWS_AS(psi_measure(gradless, Vector::Zero(1), 1.0), std::invalid_argument);
}

TEST_CASE("measure_gap is zero for the exact gradient and bounded for FD") {
  Vector eigs(2);
  eigs << 1.0, 2.0;
  Problem q = make_quadratic("q2", eigs, 21);
  const Vector x = v2(0.7, -0.4);
  const Vector g = q.exact_gradient(x);
  const StationarityReport exact = measure_gap(q, x, g, 2.0, 0.1, *q.lipschitz());
  CHECK(*exact.gap == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact.gap_within_bound);
}

TEST_CASE("separable forward differences attain the gap bound") {
  // f = (L/2)||x||^2 on the whole space at x proportional to the all-ones
  // direction: the FD perturbation is parallel to the gradient, so
  // |psi - eta| equals (L/2) tau sqrt(n) up to rounding.
  const double L = 2.0;
  Problem p(Problem::Init{
      .dimension = 2,
      .objective = [L](const Vector& x) { return 0.5 * L * x.squaredNorm(); },
      .exact_gradient = [L](const Vector& x) { return Vector(L * x); },
      .x0 = Vector::Zero(2),
      .lipschitz = L,
  });
  const Vector x = Vector::Ones(2);
  const double tau = 0.05;
  const double fx = p.evaluate(x);
  Vector g(2);
  Vector q = x;
  for (Index i = 0; i < 2; ++i) {
    q[i] = x[i] + tau;
    g[i] = (p.evaluate(q) - fx) / (q[i] - x[i]);
    q[i] = x[i];
  }
  const StationarityReport rep = measure_gap(p, x, g, 3.0, tau, L);
  CHECK(*rep.gap == doctest::Approx(*rep.gap_bound).epsilon(1e-9));
  CHECK(rep.gap_within_bound);
}

TEST_CASE("gap bound holds across a random sweep") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Vector eigs(2);
    eigs << 0.5 + rng.uniform01(), 1.5 + 3.0 * rng.uniform01();
    Problem q = make_quadratic("q2", eigs, 3000 + trial);
    const Vector x = v2(2.0 * rng.normal(), 2.0 * rng.normal());
    const double tau = std::pow(10.0, -1.0 - 2.0 * rng.uniform01());
    const double fx = q.evaluate(x);
    Vector g(2);
    Vector p = x;
    for (Index i = 0; i < 2; ++i) {
      p[i] = x[i] + tau;
      g[i] = (q.evaluate(p) - fx) / (p[i] - x[i]);
      p[i] = x[i];
    }
    const StationarityReport rep = measure_gap(q, x, g, 1.0 + 2.0 * rng.uniform01(), tau,
                                               *q.lipschitz());
    CHECK(rep.gap_within_bound);
  }
}

TEST_CASE("eta is positively homogeneous in g") {
  const FeasibleSet box = FeasibleSet::box(v2(-1, -1), v2(1, 1));
  const Vector x = v2(0.2, -0.3);
  const Vector g = v2(1.3, -0.4);
  const double base = eta_measure(g, x, box, 0.7);
  for (const double c : {0.5, 2.0, 10.0}) {
    CHECK(eta_measure(c * g, x, box, 0.7) == doctest::Approx(c * base).epsilon(1e-6));
  }
}

TEST_CASE("eta is nonincreasing in the radius") {
  const Vector g = v2(2, -1);
  // Constant on all-space.
  CHECK(eta_measure(g, v2(0, 0), FeasibleSet::all_space(), 0.5) ==
        eta_measure(g, v2(0, 0), FeasibleSet::all_space(), 5.0));
  // Verified against the grid oracle on a box.
  const FeasibleSet box = FeasibleSet::box(v2(-1, -1), v2(2, 2));
  const Vector x = v2(0.5, 0.5);
  double prev = 1e300;
  for (const double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double value = eta_bruteforce(g, x, box, r);
    CHECK(value <= prev * (1.0 + 1e-9));
    prev = value;
  }
}

TEST_CASE("large psi forces eta above half of psi") {
  // With tau <= tau0 = epsilon/(sigma sqrt(n)), if
  // psi > (L/sigma) epsilon then eta > psi/2.
  SplitMix64 rng(2718);
  const double epsilon = 1e-2, sigma = 1.0;
  for (int trial = 0; trial < 30; ++trial) {
    Vector eigs(2);
    eigs << 1.0, 2.0 + rng.uniform01();
    Problem q = make_quadratic("q2", eigs, 4000 + trial);
    const double L = *q.lipschitz();
    const Vector x = v2(1.0 + rng.uniform01(), -1.0 - rng.uniform01());
    const double tau = epsilon / (sigma * std::sqrt(2.0));
    const double fx = q.evaluate(x);
    Vector g(2);
    Vector p = x;
    for (Index i = 0; i < 2; ++i) {
      p[i] = x[i] + tau;
      g[i] = (q.evaluate(p) - fx) / (p[i] - x[i]);
      p[i] = x[i];
    }
    const double r = 10.0;
    const double psi = psi_measure(q, x, r);
    if (psi <= (L / sigma) * epsilon) continue;
    const double eta = eta_measure(g, x, q.feasible_set(), r);
    CHECK(eta > 0.5 * psi);
  }
}
