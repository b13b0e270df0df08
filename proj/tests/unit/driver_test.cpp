#include <doctest.h>

#include <trfds/driver.hpp>
#include <trfds/registry.hpp>

#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace trfds;

TEST_CASE("default config reproduces the published values") {
  const SolverConfig c4 = default_config(4);
  CHECK(c4.epsilon == 1e-5);
  CHECK(c4.alpha == 0.01);
  CHECK(c4.tau0(4) ==
        doctest::Approx(std::sqrt(std::numeric_limits<double>::epsilon())).epsilon(1e-12));
  CHECK(c4.delta0 == 1.0);
  CHECK(c4.delta_max == 1000.0);
  CHECK(c4.budget_simplex_gradients == 100);
  CHECK(c4.delta_stop == 1e-13);

  const SolverConfig c1 = default_config(1);
  CHECK(c1.alpha == 0.01);
  CHECK(c1.epsilon == 1e-5);

  for (const Index n : {1, 2, 7, 50, 1000}) {
    const SolverConfig c = default_config(n);
    CHECK(c.tau0(n) * std::sqrt(static_cast<double>(n)) <= c.delta0);
    CHECK_NOTHROW(c.validate(n));
  }
}

TEST_CASE("config validation rejects contract violations") {
  SolverConfig bad = default_config(2);
  bad.alpha = 1.5;
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
  bad = default_config(2);
  bad.delta0 = 1e-12;  // tau0 sqrt(n) above delta0
  bad.sigma = 1e-9;
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
  bad = default_config(2);
  bad.delta_max = bad.delta0 / 2.0;
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
}

TEST_CASE("rho ratio and its degenerate guard") {
  CHECK(rho(1.0, 0.5, 0.4) == doctest::Approx(1.25));
  CHECK(rho(1.0, 1.2, 0.4) == doctest::Approx(-0.5));
  CHECK(rho(1.0, 1.0, 0.4) == 0.0);
  CHECK_THROWS_AS(rho(1.0, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rho(1.0, 0.5, -1.0), std::invalid_argument);
}

TEST_CASE("classification follows steps 3 and 4") {
  // Successful: capped doubling.
  ClassifyResult r = classify_and_update(0.5, 0.01, 600.0, 0.1, 4, 1000.0);
  CHECK(r.cls == IterClass::S);
  CHECK(r.delta_next == 1000.0);
  CHECK(r.tau_next == 0.1);

  // Boundary case tau sqrt(n) == delta/2: U1 reuses everything.
  r = classify_and_update(-1.0, 0.01, 0.4, 0.1, 4, 1000.0);
  CHECK(r.cls == IterClass::U1);
  CHECK(r.delta_next == doctest::Approx(0.2));
  CHECK(r.tau_next == 0.1);
  CHECK(r.reuse_gradient);

  // Below the boundary: U2 halves tau as well.
  r = classify_and_update(-1.0, 0.01, 0.3, 0.1, 4, 1000.0);
  CHECK(r.cls == IterClass::U2);
  CHECK(r.delta_next == doctest::Approx(0.15));
  CHECK(r.tau_next == doctest::Approx(0.05));
  CHECK(!r.reuse_gradient);

  // Degenerate iterations (NaN rho) are unsuccessful.
  r = classify_and_update(std::numeric_limits<double>::quiet_NaN(), 0.01, 1.0, 0.1, 4, 1000.0);
  CHECK(r.cls != IterClass::S);
}

TEST_CASE("safeguarded BFGS update") {
  Matrix H = Matrix::Identity(2, 2);
  Vector s(2), y(2);
  s << 1, 0;
  y << 2, 0;
  const Matrix up = bfgs_update(H, s, y);
  CHECK(up(0, 0) == doctest::Approx(2.0));
  CHECK(up(1, 1) == doctest::Approx(1.0));
  CHECK(up(0, 1) == doctest::Approx(0.0));

  // <s, y> = 0: update skipped.
  y << 0, 0;
  CHECK(bfgs_update(H, s, y) == H);

  // Fixed point when Hs = y.
  y << 1, 0;
  const Matrix fixed = bfgs_update(H, s, y);
  CHECK((fixed - H).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("1-D quadratic is solved to 1e-4 within the default budget") {
  auto make_1d = [] {
    return Problem(Problem::Init{
        .dimension = 1,
        .objective = [](const Vector& x) { return (x[0] - 3.0) * (x[0] - 3.0); },
        .exact_gradient = [](const Vector& x) { return Vector(Vector::Constant(1, 2.0 * (x[0] - 3.0))); },
        .x0 = Vector::Zero(1),
        .name = "quad1d",
        .lipschitz = 2.0,
        .f_star = 0.0,
    });
  };
  // Reference oracle first: the target is attainable with exact gradients.
  Problem reference = make_1d();
  const auto oracle = testsupport::exact_gradient_trust_region(reference, 100);
  REQUIRE(std::abs(oracle.best_x[0] - 3.0) <= 1e-4);

  Problem p = make_1d();
  const RunRecord record = solve(p, default_config(p));
  CHECK(std::abs(record.best_point[0] - 3.0) <= 1e-4);
  CHECK(record.evals <= 100 * 2);
}

TEST_CASE("sphere run satisfies the bookkeeping invariants") {
  Problem p = make_sphere(5);
  DiagnosticOptions diag;
  diag.check_fd_radius_bound = true;
  const RunRecord record = solve(p, default_config(p), diag);

  CHECK(record.invariants.stepsize_coupling_violations == 0);
  CHECK(record.invariants.bound_violations == 0);
  CHECK(record.invariants.fd_radius_checks > 0);
  CHECK(record.invariants.fd_radius_violations == 0);
  // On the sphere the method can land exactly on an FD-stationary point
  // (g = 0 bitwise), so all three clean terminations are admissible.
  CHECK((record.termination == Termination::Budget ||
         record.termination == Termination::DeltaStop ||
         record.termination == Termination::StationaryFlag));

  // Monotone best-so-far, strictly decreasing f on S iterations only.
  for (size_t i = 1; i < record.best_f_per_eval.size(); ++i)
    CHECK(record.best_f_per_eval[i] <= record.best_f_per_eval[i - 1]);
  double f_prev = record.best_f_per_eval.front();
  for (const IterationRow& row : record.iterations) {
    if (row.cls == IterClass::S)
      CHECK(row.f < f_prev);
    else
      CHECK(row.f == f_prev);
    f_prev = row.f;
  }

  // Evaluation accounting: at most (n+1) per iteration, exact transcript.
  CHECK(record.evals <= (p.dimension() + 1) * static_cast<long>(record.iterations.size() + 1));
  CHECK(p.eval_count() == record.evals);
  CHECK(record.best_f <= 1e-8);
}

TEST_CASE("evaluation accounting per iteration class") {
  Problem p = make_rosenbrock();
  const RunRecord record = solve(p, default_config(p));
  // Reconstruct the expected call count: 1 for x0, n per rebuilt gradient
  // (S and U2 iterations trigger a rebuild at the next iteration; U1
  // iterations reuse g and H and cost only the trial evaluation), and 1
  // per non-degenerate trial. A final rebuild may be cut off by the
  // budget before its iteration records a row, hence the n slack.
  long expected = 1 + p.dimension();  // initial point + first gradient
  for (size_t i = 0; i < record.iterations.size(); ++i) {
    const IterationRow& row = record.iterations[i];
    if (!std::isnan(row.rho)) expected += 1;
    const bool rebuild = row.cls != IterClass::U1;
    if (rebuild && i + 1 < record.iterations.size()) expected += p.dimension();
  }
  CHECK(record.evals >= expected);
  CHECK(record.evals <= expected + p.dimension());
}

TEST_CASE("the stepsize stays coupled to the radius along the trajectory") {
  Problem p = make_problem("quad8_ill");
  const RunRecord record = solve(p, default_config(p));
  const double sqrt_n = std::sqrt(static_cast<double>(p.dimension()));
  for (const IterationRow& row : record.iterations) CHECK(row.tau * sqrt_n <= row.delta);
  CHECK(record.invariants.stepsize_coupling_violations == 0);
}

TEST_CASE("unrelaxable run keeps the whole transcript feasible") {
  Problem p = make_problem("mw_beale", FeasibleSet::box(Vector::Constant(2, 0.1), Vector::Constant(2, 20.0)),
                           true);
  SolverConfig cfg = default_config(p);
  CHECK(cfg.mode == SolveMode::UnrelaxableBox);
  const RunRecord record = solve(p, cfg);
  const OracleTranscript transcript = p.transcript();
  CHECK(transcript.count() == record.evals);
  for (const OracleRecord& rec : transcript.records) {
    for (Index i = 0; i < 2; ++i) {
      CHECK(rec.point[i] >= 0.1);
      CHECK(rec.point[i] <= 20.0);
    }
  }
}

TEST_CASE("run record serializes to the documented CSV schemas") {
  Problem p = make_sphere(2);
  SolverConfig cfg = default_config(p);
  cfg.budget_simplex_gradients = 5;
  const RunRecord record = solve(p, cfg);

  std::ostringstream history;
  record.write_history_csv(history);
  CHECK(history.str().rfind("eval,best_f\n1,", 0) == 0);

  std::ostringstream iters;
  record.write_iterations_csv(iters);
  CHECK(iters.str().rfind("k,class,delta,tau,rho,mdec,f\n", 0) == 0);
}

TEST_CASE("stationary start terminates with the flag") {
  Problem p(Problem::Init{
      .dimension = 2,
      .objective = [](const Vector&) { return 1.0; },  // constant: FD gradient is exactly zero
      .x0 = Vector::Zero(2),
      .name = "flat",
  });
  const RunRecord record = solve(p, default_config(p));
  CHECK(record.termination == Termination::StationaryFlag);
  CHECK(record.evals == 3);
}
