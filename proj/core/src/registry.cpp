#include <trfds/registry.hpp>

#include <trfds/errors.hpp>
#include <trfds/rng.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <map>
#include <utility>

namespace trfds {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

/// Residual system F: R^n -> R^m with optional Jacobian; the registered
/// objective is f(x) = ||F(x)||^2.
struct LeastSquares {
  Index n = 0, m = 0;
  std::function<void(const Vector&, Vector&)> residuals;
  std::function<void(const Vector&, Matrix&)> jacobian;
};

Problem::Init least_squares_init(std::string name, LeastSquares ls, Vector x0) {
  Problem::Init init;
  init.dimension = ls.n;
  init.name = std::move(name);
  init.x0 = std::move(x0);
  const Index m = ls.m;
  auto residuals = ls.residuals;
  init.objective = [residuals, m](const Vector& x) {
    Vector F(m);
    residuals(x, F);
    return F.squaredNorm();
  };
  if (ls.jacobian) {
    auto jacobian = ls.jacobian;
    const Index n = ls.n;
    init.exact_gradient = [residuals, jacobian, m, n](const Vector& x) {
      Vector F(m);
      residuals(x, F);
      Matrix J(m, n);
      jacobian(x, J);
      return Vector(2.0 * J.transpose() * F);
    };
  }
  return init;
}

LeastSquares mw_rosenbrock() {
  LeastSquares ls;
  ls.n = 2;
  ls.m = 2;
  ls.residuals = [](const Vector& x, Vector& F) {
    F[0] = 10.0 * (x[1] - x[0] * x[0]);
    F[1] = 1.0 - x[0];
  };
  ls.jacobian = [](const Vector& x, Matrix& J) {
    J << -20.0 * x[0], 10.0, -1.0, 0.0;
  };
  return ls;
}

LeastSquares mw_freudenstein_roth() {
  LeastSquares ls;
  ls.n = 2;
  ls.m = 2;
  ls.residuals = [](const Vector& x, Vector& F) {
    F[0] = -13.0 + x[0] + ((5.0 - x[1]) * x[1] - 2.0) * x[1];
    F[1] = -29.0 + x[0] + ((x[1] + 1.0) * x[1] - 14.0) * x[1];
  };
  ls.jacobian = [](const Vector& x, Matrix& J) {
    J << 1.0, 10.0 * x[1] - 3.0 * x[1] * x[1] - 2.0,
         1.0, 3.0 * x[1] * x[1] + 2.0 * x[1] - 14.0;
  };
  return ls;
}

LeastSquares mw_beale() {
  LeastSquares ls;
  ls.n = 2;
  ls.m = 3;
  static const double y[3] = {1.5, 2.25, 2.625};
  ls.residuals = [](const Vector& x, Vector& F) {
    for (int i = 0; i < 3; ++i) F[i] = y[i] - x[0] * (1.0 - std::pow(x[1], i + 1));
  };
  ls.jacobian = [](const Vector& x, Matrix& J) {
    for (int i = 0; i < 3; ++i) {
      J(i, 0) = -(1.0 - std::pow(x[1], i + 1));
      J(i, 1) = (i + 1) * x[0] * std::pow(x[1], i);
    }
  };
  return ls;
}

LeastSquares mw_jennrich_sampson() {
  LeastSquares ls;
  ls.n = 2;
  ls.m = 10;
  ls.residuals = [](const Vector& x, Vector& F) {
    for (int i = 1; i <= 10; ++i)
      F[i - 1] = 2.0 + 2.0 * i - (std::exp(i * x[0]) + std::exp(i * x[1]));
  };
  ls.jacobian = [](const Vector& x, Matrix& J) {
    for (int i = 1; i <= 10; ++i) {
      J(i - 1, 0) = -i * std::exp(i * x[0]);
      J(i - 1, 1) = -i * std::exp(i * x[1]);
    }
  };
  return ls;
}

double helical_theta(double x1, double x2) {
  if (x1 > 0.0) return std::atan(x2 / x1) / (2.0 * kPi);
  if (x1 < 0.0) return std::atan(x2 / x1) / (2.0 * kPi) + 0.5;
  return x2 >= 0.0 ? 0.25 : -0.25;
}

LeastSquares mw_helical_valley() {
  LeastSquares ls;
  ls.n = 3;
  ls.m = 3;
  ls.residuals = [](const Vector& x, Vector& F) {
    F[0] = 10.0 * (x[2] - 10.0 * helical_theta(x[0], x[1]));
    F[1] = 10.0 * (std::sqrt(x[0] * x[0] + x[1] * x[1]) - 1.0);
    F[2] = x[2];
  };
  ls.jacobian = [](const Vector& x, Matrix& J) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    const double r = std::sqrt(r2);
    J.setZero();
    J(0, 0) = (50.0 / kPi) * (x[1] / r2);
    J(0, 1) = -(50.0 / kPi) * (x[0] / r2);
    J(0, 2) = 10.0;
    J(1, 0) = 10.0 * x[0] / r;
    J(1, 1) = 10.0 * x[1] / r;
    J(2, 2) = 1.0;
  };
  return ls;
}

LeastSquares mw_bard() {
  LeastSquares ls;
  ls.n = 3;
  ls.m = 15;
  static const double y[15] = {0.14, 0.18, 0.22, 0.25, 0.29, 0.32, 0.35, 0.39,
                               0.37, 0.58, 0.73, 0.96, 1.34, 2.10, 4.39};
  ls.residuals = [](const Vector& x, Vector& F) {
    for (int i = 1; i <= 15; ++i) {
      const double u = i, v = 16.0 - i, w = std::min(u, v);
      F[i - 1] = y[i - 1] - (x[0] + u / (v * x[1] + w * x[2]));
    }
  };
  ls.jacobian = [](const Vector& x, Matrix& J) {
    for (int i = 1; i <= 15; ++i) {
      const double u = i, v = 16.0 - i, w = std::min(u, v);
      const double d = v * x[1] + w * x[2];
      J(i - 1, 0) = -1.0;
      J(i - 1, 1) = u * v / (d * d);
      J(i - 1, 2) = u * w / (d * d);
    }
  };
  return ls;
}

LeastSquares mw_gaussian() {
  LeastSquares ls;
  ls.n = 3;
  ls.m = 15;
  static const double y[15] = {0.0009, 0.0044, 0.0175, 0.0540, 0.1295,
                               0.2420, 0.3521, 0.3989, 0.3521, 0.2420,
                               0.1295, 0.0540, 0.0175, 0.0044, 0.0009};
  ls.residuals = [](const Vector& x, Vector& F) {
    for (int i = 1; i <= 15; ++i) {
      const double t = (8.0 - i) / 2.0;
      F[i - 1] = x[0] * std::exp(-x[1] * (t - x[2]) * (t - x[2]) / 2.0) - y[i - 1];
    }
  };
  ls.jacobian = [](const Vector& x, Matrix& J) {
    for (int i = 1; i <= 15; ++i) {
      const double t = (8.0 - i) / 2.0;
      const double dt = t - x[2];
      const double e = std::exp(-x[1] * dt * dt / 2.0);
      J(i - 1, 0) = e;
      J(i - 1, 1) = -x[0] * dt * dt / 2.0 * e;
      J(i - 1, 2) = x[0] * x[1] * dt * e;
    }
  };
  return ls;
}

LeastSquares mw_powell_singular() {
  LeastSquares ls;
  ls.n = 4;
  ls.m = 4;
  const double s5 = std::sqrt(5.0), s10 = std::sqrt(10.0);
  ls.residuals = [s5, s10](const Vector& x, Vector& F) {
    F[0] = x[0] + 10.0 * x[1];
    F[1] = s5 * (x[2] - x[3]);
    F[2] = (x[1] - 2.0 * x[2]) * (x[1] - 2.0 * x[2]);
    F[3] = s10 * (x[0] - x[3]) * (x[0] - x[3]);
  };
  ls.jacobian = [s5, s10](const Vector& x, Matrix& J) {
    J.setZero();
    J(0, 0) = 1.0;
    J(0, 1) = 10.0;
    J(1, 2) = s5;
    J(1, 3) = -s5;
    J(2, 1) = 2.0 * (x[1] - 2.0 * x[2]);
    J(2, 2) = -4.0 * (x[1] - 2.0 * x[2]);
    J(3, 0) = 2.0 * s10 * (x[0] - x[3]);
    J(3, 3) = -2.0 * s10 * (x[0] - x[3]);
  };
  return ls;
}

LeastSquares mw_wood() {
  LeastSquares ls;
  ls.n = 4;
  ls.m = 6;
  const double s90 = std::sqrt(90.0), s10 = std::sqrt(10.0);
  ls.residuals = [s90, s10](const Vector& x, Vector& F) {
    F[0] = 10.0 * (x[1] - x[0] * x[0]);
    F[1] = 1.0 - x[0];
    F[2] = s90 * (x[3] - x[2] * x[2]);
    F[3] = 1.0 - x[2];
    F[4] = s10 * (x[1] + x[3] - 2.0);
    F[5] = (x[1] - x[3]) / s10;
  };
  ls.jacobian = [s90, s10](const Vector& x, Matrix& J) {
    J.setZero();
    J(0, 0) = -20.0 * x[0];
    J(0, 1) = 10.0;
    J(1, 0) = -1.0;
    J(2, 2) = -2.0 * s90 * x[2];
    J(2, 3) = s90;
    J(3, 2) = -1.0;
    J(4, 1) = s10;
    J(4, 3) = s10;
    J(5, 1) = 1.0 / s10;
    J(5, 3) = -1.0 / s10;
  };
  return ls;
}

LeastSquares mw_brown_dennis() {
  LeastSquares ls;
  ls.n = 4;
  ls.m = 20;
  ls.residuals = [](const Vector& x, Vector& F) {
    for (int i = 1; i <= 20; ++i) {
      const double t = i / 5.0;
      const double a = x[0] + t * x[1] - std::exp(t);
      const double b = x[2] + x[3] * std::sin(t) - std::cos(t);
      F[i - 1] = a * a + b * b;
    }
  };
  ls.jacobian = [](const Vector& x, Matrix& J) {
    for (int i = 1; i <= 20; ++i) {
      const double t = i / 5.0;
      const double a = x[0] + t * x[1] - std::exp(t);
      const double b = x[2] + x[3] * std::sin(t) - std::cos(t);
      J(i - 1, 0) = 2.0 * a;
      J(i - 1, 1) = 2.0 * a * t;
      J(i - 1, 2) = 2.0 * b;
      J(i - 1, 3) = 2.0 * b * std::sin(t);
    }
  };
  return ls;
}

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Index>(v.size()));
  Index i = 0;
  for (double c : v) x[i++] = c;
  return x;
}

Problem::Init sphere_init(Index n) {
  Problem::Init init;
  init.dimension = n;
  init.name = "sphere" + std::to_string(n);
  init.objective = [](const Vector& x) { return x.squaredNorm(); };
  init.exact_gradient = [](const Vector& x) { return Vector(2.0 * x); };
  init.x0 = Vector::Ones(n);
  init.lipschitz = 2.0;
  init.pl_constant = 2.0;
  init.f_star = 0.0;
  return init;
}

Problem::Init quadratic_init(const std::string& name, Vector eigenvalues, std::uint64_t seed) {
  const Index n = eigenvalues.size();
  require(n >= 1, "quadratic needs at least one eigenvalue");
  require(eigenvalues.minCoeff() > 0.0, "quadratic spectrum must be positive");

  SplitMix64 rng(seed);
  Matrix G(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) G(i, j) = rng.normal();
  const Matrix Q = Eigen::HouseholderQR<Matrix>(G).householderQ();
  Matrix A = Q * eigenvalues.asDiagonal() * Q.transpose();
  A = 0.5 * (A + A.transpose()).eval();

  Vector x0(n);
  for (Index i = 0; i < n; ++i) x0[i] = 1.0 + rng.normal();

  Problem::Init init;
  init.dimension = n;
  init.name = name;
  init.objective = [A](const Vector& x) { return 0.5 * x.dot(A * x); };
  init.exact_gradient = [A](const Vector& x) { return Vector(A * x); };
  init.x0 = std::move(x0);
  init.lipschitz = eigenvalues.maxCoeff();
  init.pl_constant = eigenvalues.minCoeff();
  init.f_star = 0.0;
  return init;
}

Problem::Init rosenbrock_init() {
  Problem::Init init;
  init.dimension = 2;
  init.name = "rosenbrock";
  init.objective = [](const Vector& x) {
    const double a = x[1] - x[0] * x[0];
    const double b = 1.0 - x[0];
    return 100.0 * a * a + b * b;
  };
  init.exact_gradient = [](const Vector& x) {
    const double a = x[1] - x[0] * x[0];
    Vector g(2);
    g[0] = -400.0 * x[0] * a - 2.0 * (1.0 - x[0]);
    g[1] = 200.0 * a;
    return g;
  };
  init.x0 = vec({-1.2, 1.0});
  init.f_star = 0.0;
  return init;
}

Vector linspace(double lo, double hi, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

Vector logspace(double lo, double hi, Index n) {
  Vector v = linspace(std::log10(lo), std::log10(hi), n);
  for (Index i = 0; i < n; ++i) v[i] = std::pow(10.0, v[i]);
  return v;
}

using InitFactory = std::function<Problem::Init()>;

const std::vector<std::pair<std::string, InitFactory>>& factories() {
  static const std::vector<std::pair<std::string, InitFactory>> table = {
      {"sphere2", [] { return sphere_init(2); }},
      {"sphere5", [] { return sphere_init(5); }},
      {"sphere20", [] { return sphere_init(20); }},
      {"quad5", [] { return quadratic_init("quad5", linspace(1.0, 10.0, 5), 11); }},
      {"quad8_ill", [] { return quadratic_init("quad8_ill", logspace(1.0, 100.0, 8), 13); }},
      {"quad20", [] { return quadratic_init("quad20", linspace(1.0, 100.0, 20), 17); }},
      {"rosenbrock", [] { return rosenbrock_init(); }},
      {"mw_rosenbrock", [] { return least_squares_init("mw_rosenbrock", mw_rosenbrock(), vec({-1.2, 1.0})); }},
      {"mw_freudenstein_roth",
       [] { return least_squares_init("mw_freudenstein_roth", mw_freudenstein_roth(), vec({0.5, -2.0})); }},
      {"mw_beale", [] { return least_squares_init("mw_beale", mw_beale(), vec({1.0, 1.0})); }},
      {"mw_jennrich_sampson",
       [] { return least_squares_init("mw_jennrich_sampson", mw_jennrich_sampson(), vec({0.3, 0.4})); }},
      {"mw_helical_valley",
       [] { return least_squares_init("mw_helical_valley", mw_helical_valley(), vec({-1.0, 0.0, 0.0})); }},
      {"mw_bard", [] { return least_squares_init("mw_bard", mw_bard(), vec({1.0, 1.0, 1.0})); }},
      {"mw_gaussian", [] { return least_squares_init("mw_gaussian", mw_gaussian(), vec({0.4, 1.0, 0.0})); }},
      {"mw_powell_singular",
       [] { return least_squares_init("mw_powell_singular", mw_powell_singular(), vec({3.0, -1.0, 0.0, 1.0})); }},
      {"mw_wood", [] { return least_squares_init("mw_wood", mw_wood(), vec({-3.0, -1.0, -3.0, -1.0})); }},
      {"mw_brown_dennis",
       [] { return least_squares_init("mw_brown_dennis", mw_brown_dennis(), vec({25.0, 5.0, -5.0, -1.0})); }},
  };
  return table;
}

Problem::Init find_init(const std::string& name) {
  for (const auto& [key, factory] : factories())
    if (key == name) return factory();
  throw std::invalid_argument("unknown problem '" + name + "'");
}

} // namespace

std::vector<std::string> registry_names() {
  std::vector<std::string> names;
  for (const auto& [key, factory] : factories()) names.push_back(key);
  return names;
}

std::vector<std::string> more_wild_names() {
  std::vector<std::string> names;
  for (const auto& [key, factory] : factories())
    if (key.rfind("mw_", 0) == 0) names.push_back(key);
  return names;
}

Problem make_problem(const std::string& name) { return Problem(find_init(name)); }

Problem make_problem(const std::string& name, FeasibleSet set, bool unrelaxable) {
  Problem::Init init = find_init(name);
  init.feasible_set = std::move(set);
  init.unrelaxable = unrelaxable;
  return Problem(std::move(init));
}

Problem make_sphere(Index n) { return Problem(sphere_init(n)); }

Problem make_quadratic(const std::string& name, const Vector& eigenvalues, std::uint64_t seed) {
  return Problem(quadratic_init(name, eigenvalues, seed));
}

Problem make_rosenbrock() { return Problem(rosenbrock_init()); }

} // namespace trfds
