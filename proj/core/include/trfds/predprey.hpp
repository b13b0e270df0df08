#pragma once

#include <trfds/driver.hpp>
#include <trfds/problem.hpp>
#include <trfds/rk45.hpp>
#include <trfds/types.hpp>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace trfds {

/// Rosenzweig-MacArthur predator-prey parameters
/// [zeta, theta, lambda, mu, nu, xi]: prey growth rate, carrying capacity,
/// predation rate, half-saturation, conversion rate, predator death rate.
struct PredPreyParams {
  double zeta, theta, lambda, mu, nu, xi;

  Vector to_vector() const;
  static PredPreyParams from_vector(const Vector& v);

  static PredPreyParams truth();          // ground-truth calibration target
  static PredPreyParams initial_guess();  // calibration starting point
  static Vector lower_bounds();
  static Vector upper_bounds();
};

struct Trajectory {
  std::vector<double> times;
  Vector prey;
  Vector predator;

  void write_csv(std::ostream& os) const;  // t,Y,Z
};

struct PredPreyDataset {
  std::vector<double> times;
  Vector prey_obs;
  Vector predator_obs;
  double noise_scale = 10.0;
  std::uint64_t seed = 0;
  double prey_mean = 0.0;
  double predator_mean = 0.0;

  void write_csv(std::ostream& os) const;  // t,Y,Z
};

/// Fixed initial densities Y(0) = 400, Z(0) = 20.
double predprey_y0();
double predprey_z0();

/// The observation grid t_i = 0.5 i, i = 0..70.
std::vector<double> standard_times();

/// Integrates the predator-prey system at the requested times.
Trajectory integrate_predprey(const PredPreyParams& params, double y0, double z0,
                              const std::vector<double>& times, const Rk45Options& options = {});

/// Synthetic dataset: the trajectory at `truth` plus noise_scale times a
/// standard-normal perturbation per time point (one draw per point,
/// applied to both series), from the seeded counter-based generator.
PredPreyDataset make_dataset(const PredPreyParams& truth, std::uint64_t seed,
                             double noise_scale = 10.0);

/// Weighted least squares
///   f(x) = (1/Ybar^2) sum (Y(t_i;x) - Yobs_i)^2
///        + (1/Zbar^2) sum (Z(t_i;x) - Zobs_i)^2,
/// with integration failures mapped to a 1e12 penalty.
double calibration_objective(const PredPreyDataset& dataset, const PredPreyParams& params);

/// The calibration problem as an unrelaxable-box Problem.
Problem make_calibration_problem(const PredPreyDataset& dataset, Vector x0, Vector lower,
                                 Vector upper);

struct CalibrationResult {
  RunRecord record;
  PredPreyParams fitted;
};

/// Runs the trust-region solver on the calibration problem with the given
/// evaluation budget (in plain evaluations; 350 evaluations correspond to
/// 50 simplex gradients for n = 6).
CalibrationResult calibrate(const PredPreyDataset& dataset, const Vector& x0,
                            const Vector& lower, const Vector& upper, long budget_evals);

} // namespace trfds
