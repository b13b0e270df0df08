#include <trfds/subproblem.hpp>

#include <trfds/errors.hpp>
#include <trfds/projections.hpp>
#include <trfds/rng.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace trfds {

namespace {

constexpr double kArmijo = 0.1;
constexpr int kMaxHalvings = 60;

/// Nudges d by ulps until x + d lands inside the box exactly.
void snap_step_into_box(const Vector& x, Vector& d, const Vector& lower, const Vector& upper) {
  for (Index i = 0; i < d.size(); ++i) {
    double p = x[i] + d[i];
    while (p > upper[i]) {
      d[i] = std::nextafter(d[i], -std::numeric_limits<double>::infinity());
      p = x[i] + d[i];
    }
    while (p < lower[i]) {
      d[i] = std::nextafter(d[i], std::numeric_limits<double>::infinity());
      p = x[i] + d[i];
    }
  }
}

/// Final feasibility cleanup: box clamp (exact), then radial truncation.
void finalize_step(const QuadraticModel& model, double delta, const FeasibleSet& set,
                   const Vector& x, TrialStep& step) {
  if (set.kind() == FeasibleSet::Kind::Box) snap_step_into_box(x, step.d, set.lower(), set.upper());
  const double nrm = step.d.norm();
  if (nrm > delta) {
    step.d *= delta / nrm;
    if (set.kind() == FeasibleSet::Kind::Box) snap_step_into_box(x, step.d, set.lower(), set.upper());
  } else if (set.kind() == FeasibleSet::Kind::Ball) {
    const Vector y = set.project(x + step.d);
    step.d = y - x;
  }
  step.model_decrease = model.decrease(step.d);
}

/// Near-exact Euclidean-ball trust-region solution by bisection on the
/// shift of (H + lam I) d = -g. Returns an empty vector when no usable
/// solution was found (callers treat it as one more candidate).
Vector ball_trs(const QuadraticModel& model, double delta) {
  const Index n = model.g.size();
  const double scale = std::max(1.0, model.H.cwiseAbs().maxCoeff());

  auto solve_shifted = [&](double lam, Vector& d) {
    Eigen::LDLT<Matrix> ldlt(Matrix(model.H + lam * Matrix::Identity(n, n)));
    if (ldlt.info() != Eigen::Success) return false;
    if ((ldlt.vectorD().array() <= 1e-14 * scale).any()) return false;
    d = -ldlt.solve(model.g);
    return d.allFinite();
  };

  Vector d(n);
  if (solve_shifted(0.0, d) && d.norm() <= delta) return d;  // interior minimizer

  // Bracket a shift that pulls the solution inside the ball.
  double lo = 0.0;
  double hi = std::max(1e-8 * scale, model.g.norm() / delta);
  Vector d_hi;
  for (int it = 0; it < 200; ++it) {
    if (solve_shifted(hi, d_hi) && d_hi.norm() <= delta) break;
    hi *= 4.0;
    if (hi > 1e18 * scale) return Vector();
  }
  Vector best = d_hi;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    Vector dm;
    if (solve_shifted(mid, dm) && dm.norm() <= delta) {
      hi = mid;
      best = dm;
    } else {
      lo = mid;
    }
  }
  // Hard case: the solution stays short of the boundary while the shift
  // sits at the indefiniteness edge. Complete the step along the shifted
  // near-null direction to the boundary.
  if (best.norm() < 0.95 * delta && lo > 0.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(model.H);
    if (eig.info() == Eigen::Success) {
      const Vector v = eig.eigenvectors().col(0);  // most negative eigenvalue
      const double bb = best.dot(v);
      const double cc = best.squaredNorm() - delta * delta;
      const double disc = bb * bb - cc;
      if (disc >= 0.0) {
        const double t1 = -bb + std::sqrt(disc);
        const double t2 = -bb - std::sqrt(disc);
        const Vector c1 = best + t1 * v;
        const Vector c2 = best + t2 * v;
        best = model.value(c1) <= model.value(c2) ? c1 : c2;
      }
    }
  }
  return best;
}

struct EigPair {
  double value = 0.0;
  Vector vector;
};

EigPair power_iteration(const Matrix& B, int iterations) {
  const Index n = B.rows();
  SplitMix64 rng(0x5eedULL);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  double nv = v.norm();
  if (nv == 0.0) v.setOnes(), nv = v.norm();
  v /= nv;
  double value = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = B * v;
    value = w.norm();
    if (value == 0.0) break;
    v = w / value;
  }
  return {value, std::move(v)};
}

} // namespace

void QuadraticModel::validate() const {
  require(g.size() == H.rows() && H.rows() == H.cols(), "model dimension mismatch");
  const double hmax = H.cwiseAbs().maxCoeff();
  require(hmax > 0.0, "model requires a nonzero H");
  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12 * (1.0 + hmax), "model requires a symmetric H");
}

const char* to_string(StepTag tag) {
  switch (tag) {
    case StepTag::Cauchy: return "cauchy";
    case StepTag::GeneralizedCauchy: return "gen-cauchy";
    case StepTag::TruncatedCG: return "truncated-cg";
    case StepTag::ProjectedAccel: return "projected-accel";
  }
  return "?";
}

double power_iteration_norm(const Matrix& H, int iterations) {
  return power_iteration(H, iterations).value;
}

TrialStep cauchy_step(const QuadraticModel& model, double delta) {
  require(delta > 0.0, "cauchy_step: delta must be positive");
  const double gnorm = model.g.norm();
  require(gnorm > 0.0, "cauchy_step: zero gradient");

  const double curvature = model.g.dot(model.H * model.g);
  double t = delta / gnorm;
  if (curvature > 0.0) t = std::min(t, gnorm * gnorm / curvature);

  TrialStep step;
  step.d = -t * model.g;
  step.model_decrease = model.decrease(step.d);
  step.solver_tag = StepTag::Cauchy;
  return step;
}

TrialStep generalized_cauchy_step(const QuadraticModel& model, double delta,
                                  const FeasibleSet& set, const Vector& x) {
  require(delta > 0.0, "generalized_cauchy_step: delta must be positive");
  const double gnorm = model.g.norm();
  require(gnorm > 0.0, "generalized_cauchy_step: zero gradient");

  TrialStep best;
  best.d = Vector::Zero(x.size());
  best.model_decrease = 0.0;
  best.solver_tag = StepTag::GeneralizedCauchy;

  bool moved = false;
  double t = delta / gnorm;
  for (int halving = 0; halving <= kMaxHalvings; ++halving, t *= 0.5) {
    Vector s = set.project(x - t * model.g) - x;
    const double snorm = s.norm();
    if (snorm == 0.0) continue;
    moved = true;
    if (snorm > delta) s *= delta / snorm;

    const double slope = model.g.dot(s);
    const double decrease = -(slope + 0.5 * s.dot(model.H * s));
    if (decrease > best.model_decrease) {
      best.d = s;
      best.model_decrease = decrease;
    }
    // Armijo-type model decrease along the projected path.
    if (decrease >= -kArmijo * slope && slope < 0.0) {
      best.d = std::move(s);
      best.model_decrease = decrease;
      return best;
    }
  }
  best.degenerate = !moved;
  return best;
}

TrialStep truncated_cg(const QuadraticModel& model, double delta) {
  require(delta > 0.0, "truncated_cg: delta must be positive");
  const double gnorm = model.g.norm();
  require(gnorm > 0.0, "truncated_cg: zero gradient");

  const Index n = model.g.size();
  const double rtol = std::min(0.1, std::sqrt(gnorm)) * gnorm;

  Vector p = Vector::Zero(n);
  Vector r = model.g;  // gradient of the model at p = 0
  Vector dir = -r;

  auto boundary_point = [&](const Vector& base, const Vector& along) {
    // Positive root of ||base + t along|| = delta.
    const double aa = along.squaredNorm();
    const double bb = base.dot(along);
    const double cc = base.squaredNorm() - delta * delta;
    const double disc = std::max(0.0, bb * bb - aa * cc);
    const double t = (-bb + std::sqrt(disc)) / aa;
    return Vector(base + t * along);
  };

  for (Index it = 0; it < 2 * n + 2; ++it) {
    const Vector Hd = model.H * dir;
    const double curv = dir.dot(Hd);
    if (curv <= 0.0) {
      p = boundary_point(p, dir);
      break;
    }
    const double rr = r.squaredNorm();
    const double alpha = rr / curv;
    const Vector p_next = p + alpha * dir;
    if (p_next.norm() >= delta) {
      p = boundary_point(p, dir);
      break;
    }
    r += alpha * Hd;
    p = p_next;
    if (r.norm() <= rtol) break;
    const double beta = r.squaredNorm() / rr;
    dir = -r + beta * dir;
  }

  TrialStep step;
  step.d = std::move(p);
  step.model_decrease = model.decrease(step.d);
  step.solver_tag = StepTag::TruncatedCG;

  // Never worse than the Cauchy point.
  TrialStep cp = cauchy_step(model, delta);
  if (!(step.model_decrease >= cp.model_decrease) || !step.d.allFinite()) return cp;
  return step;
}

TrialStep projected_accel(const QuadraticModel& model, double delta, const FeasibleSet& set,
                          const Vector& x, const TrialStep& warm) {
  require(set.kind() == FeasibleSet::Kind::Box || set.kind() == FeasibleSet::Kind::Ball,
          "projected_accel needs a box or ball feasible set");
  require(delta > 0.0, "projected_accel: delta must be positive");

  const Index n = x.size();
  auto project_c = [&](const Vector& z) { return project_step_set(z, set, x, delta); };
  auto grad = [&](const Vector& d) { return Vector(model.g + model.H * d); };

  const double hnorm = power_iteration_norm(model.H);
  const double stepsize = 1.0 / std::max(hnorm, 1e-12);

  TrialStep gc = generalized_cauchy_step(model, delta, set, x);
  finalize_step(model, delta, set, x, gc);

  Vector best = gc.d;
  double best_dec = gc.model_decrease;
  auto consider = [&](const Vector& d) {
    const double dec = model.decrease(d);
    if (dec > best_dec) {
      best = d;
      best_dec = dec;
    }
  };

  // FISTA from the warm start, with a function restart to stay monotone
  // when H is indefinite.
  Vector d = warm.d.size() == n ? project_c(warm.d) : Vector::Zero(n);
  consider(d);
  Vector v = d;
  double t_acc = 1.0;
  double prev_value = model.value(d);
  for (int it = 0; it < 500; ++it) {
    const Vector d_next = project_c(v - stepsize * grad(v));
    const double value = model.value(d_next);
    consider(d_next);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
    if (value > prev_value) {
      v = d_next;  // restart momentum
      t_acc = 1.0;
    } else {
      v = d_next + ((t_acc - 1.0) / t_next) * (d_next - d);
      t_acc = t_next;
    }
    const double move = (d_next - d).norm();
    d = d_next;
    prev_value = value;
    if (move <= 1e-10 * std::max(1.0, d.norm())) break;
  }

  // Ball trust-region candidate: near-exact when the box is inactive; for
  // ill-conditioned H this reaches in one shot what the gradient scheme
  // approaches slowly. The Cauchy safeguard below keeps the decrease
  // guarantee intact either way.
  {
    const Vector trs = ball_trs(model, delta);
    if (trs.size() == n) {
      Vector cand = project_c(trs);
      consider(cand);
      for (int it = 0; it < 50; ++it) {
        const Vector cand_next = project_c(cand - stepsize * grad(cand));
        if ((cand_next - cand).norm() <= 1e-12 * std::max(1.0, cand.norm())) break;
        cand = cand_next;
        consider(cand);
      }
    }
  }

  // Plain projected-gradient polish from the incumbent.
  Vector q = best;
  for (int it = 0; it < 100; ++it) {
    const Vector q_next = project_c(q - stepsize * grad(q));
    if ((q_next - q).norm() <= 1e-12 * std::max(1.0, q.norm())) break;
    q = q_next;
    consider(q);
  }

  // Negative-curvature probe: for indefinite H the valley along the most
  // negative eigendirection may be invisible to the gradient path.
  const EigPair shifted = power_iteration(Matrix(hnorm * Matrix::Identity(n, n) - model.H), 30);
  const double lambda_min = hnorm - shifted.value;
  if (lambda_min < -1e-12 * std::max(1.0, hnorm)) {
    for (const double sign : {1.0, -1.0}) {
      Vector c = project_c(sign * delta * shifted.vector);
      consider(c);
      for (int it = 0; it < 50; ++it) {
        const Vector c_next = project_c(c - stepsize * grad(c));
        if ((c_next - c).norm() <= 1e-12) break;
        c = c_next;
        consider(c);
      }
    }
  }

  TrialStep out;
  out.d = best;
  out.solver_tag = StepTag::ProjectedAccel;
  finalize_step(model, delta, set, x, out);

  if (!(out.model_decrease > gc.model_decrease) || !out.d.allFinite()) return gc;
  return out;
}

bool decrease_certificate(const TrialStep& step, double eta, double delta, double normH,
                          double kappa) {
  const double scale = normH > 0.0 ? std::min(delta, eta / normH) : delta;
  return step.model_decrease + 1e-10 >= kappa * eta * scale;
}

} // namespace trfds
