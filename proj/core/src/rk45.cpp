#include <trfds/rk45.hpp>

#include <trfds/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace trfds {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
// Dense-output coefficients (Hairer/Norsett/Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

double scaled_rms(const Vector& v, const Vector& scale) {
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double q = v[i] / scale[i];
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(v.size()));
}

} // namespace

Matrix rk45_solve(const OdeRhs& rhs, double t0, const Vector& y0,
                  const std::vector<double>& times, const Rk45Options& options,
                  Rk45Stats* stats) {
  const Index dim = y0.size();
  require(dim >= 1, "rk45_solve: empty state");
  require(!times.empty(), "rk45_solve: no output times");
  require(times.front() >= t0, "rk45_solve: output times must start at or after t0");
  for (size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], "rk45_solve: output times must be strictly increasing");

  Matrix out(static_cast<Index>(times.size()), dim);
  size_t next_out = 0;

  Vector y = y0;
  double t = t0;
  Vector k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim), ynew(dim);
  rhs(t, y, k1);
  if (!k1.allFinite() || !y.allFinite()) throw IntegrationError("rk45: non-finite initial data");

  if (times[0] == t0) {
    out.row(next_out++) = y.transpose();
    if (next_out == times.size()) return out;
  }
  const double t_end = times.back();

  const double h_cap = options.max_step > 0.0 ? options.max_step
                                              : std::numeric_limits<double>::infinity();

  // Starting stepsize in the style of Hairer's hinit.
  Vector scale = (options.atol + options.rtol * y.cwiseAbs().array()).matrix();
  double h;
  if (options.initial_step > 0.0) {
    h = std::min({options.initial_step, h_cap, t_end - t});
  } else {
    const double d0 = scaled_rms(y, scale);
    const double dd1 = scaled_rms(k1, scale);
    double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
    h0 = std::min(h0, t_end - t);
    ytmp = y + h0 * k1;
    rhs(t + h0, ytmp, k2);
    const double d2 = scaled_rms(Vector(k2 - k1), scale) / h0;
    double h1;
    if (std::max(dd1, d2) <= 1e-15)
      h1 = std::max(1e-6, h0 * 1e-3);
    else
      h1 = std::pow(0.01 / std::max(dd1, d2), 0.2);
    h = std::min({100.0 * h0, h1, h_cap, t_end - t});
  }

  for (long step = 0; step < options.max_steps; ++step) {
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegrationError("rk45: stepsize underflow at t = " + std::to_string(t));
    const bool last = t + h >= t_end;
    if (last) h = t_end - t;

    ytmp = y + h * (a21 * k1);
    rhs(t + h / 5.0, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + 3.0 * h / 10.0, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + 4.0 * h / 5.0, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + 8.0 * h / 9.0, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, ynew, k7);

    bool reject = !ynew.allFinite() || !k7.allFinite();
    double err = 1e8;  // non-finite step: cut the stepsize hard
    if (!reject) {
      const Vector err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      for (Index i = 0; i < dim; ++i)
        scale[i] = options.atol + options.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = scaled_rms(err_vec, scale);
      reject = !(err <= 1.0);
    }

    if (stats) {
      stats->rhs_evals += 6;
      if (reject)
        ++stats->steps_rejected;
      else
        ++stats->steps_accepted;
    }

    if (!reject) {
      // Emit dense output for every requested time inside this step.
      while (next_out < times.size() && times[next_out] <= t + h) {
        const double theta = (times[next_out] - t) / h;
        const double theta1 = 1.0 - theta;
        const Vector ydiff = ynew - y;
        const Vector bspl = h * k1 - ydiff;
        const Vector r4 = ydiff - h * k7 - bspl;
        const Vector r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        out.row(next_out) =
            (y + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)))).transpose();
        ++next_out;
      }
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      if (next_out == times.size() || t >= t_end) return out;
    }

    double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);
    h = std::min({h * factor, h_cap, t_end - t});
  }
  throw IntegrationError("rk45: exceeded max_steps");
}

} // namespace trfds
