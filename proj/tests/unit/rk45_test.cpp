#include <doctest.h>

#include <trfds/errors.hpp>
#include <trfds/rk45.hpp>

#include <cmath>

using namespace trfds;

namespace {

const OdeRhs decay = [](double, const Vector& y, Vector& dydt) { dydt[0] = -y[0]; };

} // namespace

TEST_CASE("exponential decay hits the closed form") {
  const Matrix out = rk45_solve(decay, 0.0, Vector::Ones(1), {1.0});
  CHECK(std::abs(out(0, 0) - std::exp(-1.0)) <= 1e-7);
}

TEST_CASE("dense output interpolates interior times accurately") {
  const std::vector<double> times = {0.0, 0.13, 0.5, 0.77, 1.0, 2.5};
  const Matrix out = rk45_solve(decay, 0.0, Vector::Ones(1), times);
  for (size_t i = 0; i < times.size(); ++i)
    CHECK(std::abs(out(static_cast<Index>(i), 0) - std::exp(-times[i])) <= 1e-7);
}

TEST_CASE("fixed-step runs converge at order >= 4") {
  // Force fixed steps via initial_step == max_step and huge tolerances;
  // the endpoint error then scales with the classical order of the pair.
  auto endpoint_error = [](double h) {
    Rk45Options opts;
    opts.rtol = 1e30;
    opts.atol = 1e30;
    opts.initial_step = h;
    opts.max_step = h;
    const Matrix out = rk45_solve(decay, 0.0, Vector::Ones(1), {1.0}, opts);
    return std::abs(out(0, 0) - std::exp(-1.0));
  };
  const double e16 = endpoint_error(1.0 / 16.0);
  const double e32 = endpoint_error(1.0 / 32.0);
  CHECK(e32 > 0.0);
  CHECK(e16 / e32 >= 16.0);  // halving h cuts the error by at least 2^4
}

TEST_CASE("tighter tolerances tighten the achieved error") {
  double prev_err = 1e300;
  for (const double tol : {1e-5, 1e-7, 1e-9}) {
    Rk45Options opts;
    opts.rtol = tol;
    opts.atol = tol * 1e-2;
    const Matrix out = rk45_solve(decay, 0.0, Vector::Ones(1), {1.0}, opts);
    const double err = std::abs(out(0, 0) - std::exp(-1.0));
    CHECK(err <= std::max(prev_err, 100.0 * tol));
    prev_err = err;
  }
}

TEST_CASE("blow-up raises an integration error") {
  const OdeRhs riccati = [](double, const Vector& y, Vector& dydt) { dydt[0] = y[0] * y[0]; };
  // y' = y^2 from y(0) = 1 blows up at t = 1.
  CHECK_THROWS_AS(rk45_solve(riccati, 0.0, Vector::Ones(1), {2.0}), IntegrationError);
}

TEST_CASE("stats expose step counts") {
  Rk45Stats stats;
  rk45_solve(decay, 0.0, Vector::Ones(1), {1.0}, {}, &stats);
  CHECK(stats.steps_accepted > 0);
  CHECK(stats.rhs_evals >= 6 * stats.steps_accepted);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(rk45_solve(decay, 0.0, Vector::Ones(1), {}), std::invalid_argument);
  CHECK_THROWS_AS(rk45_solve(decay, 0.0, Vector::Ones(1), {1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(rk45_solve(decay, 1.0, Vector::Ones(1), {0.5}), std::invalid_argument);
}
