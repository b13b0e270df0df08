#include <trfds/predprey.hpp>

#include <trfds/errors.hpp>
#include <trfds/rng.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

namespace trfds {

namespace {

void write_tyz(std::ostream& os, const std::vector<double>& t, const Vector& y, const Vector& z) {
  os << "t,Y,Z\n";
  char buf[128];
  for (size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", t[i], y[static_cast<Index>(i)],
                  z[static_cast<Index>(i)]);
    os << buf;
  }
}

OdeRhs predprey_rhs(const PredPreyParams& p) {
  return [p](double, const Vector& y, Vector& dydt) {
    const double Y = y[0], Z = y[1];
    const double interaction = Y * Z / (p.mu + Y);
    dydt[0] = p.zeta * Y * (1.0 - Y / p.theta) - p.lambda * interaction;
    dydt[1] = p.nu * interaction - p.xi * Z;
  };
}

} // namespace

Vector PredPreyParams::to_vector() const {
  Vector v(6);
  v << zeta, theta, lambda, mu, nu, xi;
  return v;
}

PredPreyParams PredPreyParams::from_vector(const Vector& v) {
  require(v.size() == 6, "PredPreyParams needs 6 components");
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

PredPreyParams PredPreyParams::truth() { return {0.723, 447.0, 2.88, 21.9, 5.54, 4.99}; }

PredPreyParams PredPreyParams::initial_guess() { return {0.6, 400.0, 1.0, 10.0, 3.0, 2.0}; }

Vector PredPreyParams::lower_bounds() { return Vector::Constant(6, 0.001); }

Vector PredPreyParams::upper_bounds() {
  Vector u(6);
  u << 5.0, 1000.0, 10.0, 500.0, 10.0, 5.0;
  return u;
}

double predprey_y0() { return 400.0; }
double predprey_z0() { return 20.0; }

std::vector<double> standard_times() {
  std::vector<double> t(71);
  for (int i = 0; i <= 70; ++i) t[i] = 0.5 * i;
  return t;
}

void Trajectory::write_csv(std::ostream& os) const { write_tyz(os, times, prey, predator); }
void PredPreyDataset::write_csv(std::ostream& os) const {
  write_tyz(os, times, prey_obs, predator_obs);
}

Trajectory integrate_predprey(const PredPreyParams& params, double y0, double z0,
                              const std::vector<double>& times, const Rk45Options& options) {
  require(y0 > 0.0 && z0 > 0.0, "predator-prey initial densities must be positive");
  Vector state(2);
  state << y0, z0;
  const Matrix sol = rk45_solve(predprey_rhs(params), times.front(), state, times, options);
  Trajectory traj;
  traj.times = times;
  traj.prey = sol.col(0);
  traj.predator = sol.col(1);
  require(traj.prey.allFinite() && traj.predator.allFinite(), "trajectory must be finite");
  return traj;
}

PredPreyDataset make_dataset(const PredPreyParams& truth, std::uint64_t seed,
                             double noise_scale) {
  const std::vector<double> times = standard_times();
  const Trajectory traj = integrate_predprey(truth, predprey_y0(), predprey_z0(), times);

  PredPreyDataset data;
  data.times = times;
  data.noise_scale = noise_scale;
  data.seed = seed;
  data.prey_obs = traj.prey;
  data.predator_obs = traj.predator;
  SplitMix64 rng(seed);
  for (Index i = 0; i < data.prey_obs.size(); ++i) {
    const double eps = rng.normal();
    data.prey_obs[i] += noise_scale * eps;
    data.predator_obs[i] += noise_scale * eps;
  }
  data.prey_mean = data.prey_obs.mean();
  data.predator_mean = data.predator_obs.mean();
  return data;
}

double calibration_objective(const PredPreyDataset& dataset, const PredPreyParams& params) {
  Trajectory traj;
  try {
    traj = integrate_predprey(params, predprey_y0(), predprey_z0(), dataset.times);
  } catch (const IntegrationError&) {
    return 1e12;  // keep the oracle total over the box
  } catch (const std::invalid_argument&) {
    return 1e12;
  }
  const double wy = 1.0 / (dataset.prey_mean * dataset.prey_mean);
  const double wz = 1.0 / (dataset.predator_mean * dataset.predator_mean);
  return wy * (traj.prey - dataset.prey_obs).squaredNorm() +
         wz * (traj.predator - dataset.predator_obs).squaredNorm();
}

Problem make_calibration_problem(const PredPreyDataset& dataset, Vector x0, Vector lower,
                                 Vector upper) {
  PredPreyDataset data = dataset;
  return Problem(Problem::Init{
      .dimension = 6,
      .objective = [data](const Vector& x) {
        return calibration_objective(data, PredPreyParams::from_vector(x));
      },
      .feasible_set = FeasibleSet::box(std::move(lower), std::move(upper)),
      .unrelaxable = true,
      .x0 = std::move(x0),
      .name = "predprey-calibration",
  });
}

CalibrationResult calibrate(const PredPreyDataset& dataset, const Vector& x0,
                            const Vector& lower, const Vector& upper, long budget_evals) {
  Problem problem = make_calibration_problem(dataset, x0, lower, upper);
  SolverConfig config = default_config(problem);
  config.budget_simplex_gradients = budget_evals / (problem.dimension() + 1);
  require(config.budget_simplex_gradients >= 1, "calibration budget too small");
  CalibrationResult result{solve(problem, config), PredPreyParams::truth()};
  result.record.solver_name = "trfds-unrelaxable";
  result.fitted = PredPreyParams::from_vector(result.record.best_point);
  return result;
}

} // namespace trfds
