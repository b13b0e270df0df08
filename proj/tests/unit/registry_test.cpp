#include <doctest.h>

#include <trfds/registry.hpp>

#include <cmath>

using namespace trfds;

TEST_CASE("registry lists and builds every problem") {
  const auto names = registry_names();
  CHECK(names.size() >= 17);
  CHECK(more_wild_names().size() == 10);
  for (const auto& name : names) {
    Problem p = make_problem(name);
    CHECK(p.dimension() >= 1);
    CHECK(std::isfinite(p.evaluate(p.x0())));
  }
  CHECK_THROWS_AS(make_problem("no-such-problem"), std::invalid_argument);
}

TEST_CASE("exact gradients agree with central differences") {
  // Central differences are fourth-order accurate here (h^2 truncation),
  // an independent check on every hand-written Jacobian.
  for (const auto& name : registry_names()) {
    Problem p = make_problem(name);
    if (!p.has_exact_gradient()) continue;
    const Index n = p.dimension();
    Vector x = p.x0();
    // Move slightly off the start to avoid special points (helical valley
    // is not differentiable at x1 = 0 boundaries etc.).
    for (Index i = 0; i < n; ++i) x[i] += 0.05 + 0.01 * static_cast<double>(i);
    const Vector g = p.exact_gradient(x);
    Vector p_hi = x, p_lo = x;
    for (Index i = 0; i < n; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
      p_hi[i] = x[i] + h;
      p_lo[i] = x[i] - h;
      const double fd = (p.evaluate(p_hi) - p.evaluate(p_lo)) / (p_hi[i] - p_lo[i]);
      const double scale = std::max({1.0, std::abs(g[i]), std::abs(fd)});
      CHECK_MESSAGE(std::abs(fd - g[i]) <= 2e-4 * scale,
                    name << " coordinate " << i << ": fd=" << fd << " exact=" << g[i]);
      p_hi[i] = x[i];
      p_lo[i] = x[i];
    }
  }
}

TEST_CASE("quadratic family carries consistent metadata") {
  Vector eigs(3);
  eigs << 1.0, 4.0, 9.0;
  Problem q = make_quadratic("q3", eigs, 99);
  CHECK(*q.lipschitz() == 9.0);
  CHECK(*q.pl_constant() == 1.0);
  CHECK(*q.f_star() == 0.0);
  CHECK(q.evaluate(Vector::Zero(3)) == 0.0);
  CHECK(q.exact_gradient(Vector::Zero(3)).norm() == 0.0);
  // Gradient Lipschitz constant is attained along the top eigenvector.
  const Vector x = Vector::Ones(3);
  CHECK(q.exact_gradient(x).norm() <= 9.0 * x.norm() * (1.0 + 1e-12));
}

TEST_CASE("boxed variants project the start point") {
  Problem p = make_problem("mw_wood", FeasibleSet::box(Vector::Constant(4, 0.1), Vector::Constant(4, 20.0)),
                           true);
  CHECK(p.unrelaxable());
  for (Index i = 0; i < 4; ++i) {
    CHECK(p.x0()[i] >= 0.1);
    CHECK(p.x0()[i] <= 20.0);
  }
}
