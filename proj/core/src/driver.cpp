#include <trfds/driver.hpp>

#include <trfds/errors.hpp>
#include <trfds/stationarity.hpp>
#include <trfds/subproblem.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <utility>

namespace trfds {

namespace {

void append_number(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += buf;
}

} // namespace

const char* to_string(IterClass c) {
  switch (c) {
    case IterClass::S: return "S";
    case IterClass::U1: return "U1";
    case IterClass::U2: return "U2";
  }
  return "?";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Budget: return "Budget";
    case Termination::DeltaStop: return "DeltaStop";
    case Termination::StationaryFlag: return "StationaryFlag";
  }
  return "?";
}

double SolverConfig::tau0(Index n) const { return initial_tau(epsilon, sigma, n); }

void SolverConfig::validate(Index n) const {
  require(epsilon > 0.0, "config: epsilon must be positive");
  require(sigma > 0.0, "config: sigma must be positive");
  require(alpha > 0.0 && alpha < 1.0, "config: alpha must lie in (0,1)");
  require(delta0 > 0.0, "config: delta0 must be positive");
  require(delta_max >= delta0, "config: delta_max must be >= delta0");
  require(budget_simplex_gradients >= 1, "config: budget must be positive");
  require(delta_stop > 0.0, "config: delta_stop must be positive");
  require(tau0(n) * std::sqrt(static_cast<double>(n)) <= delta0,
          "config: tau0 sqrt(n) <= delta0 is required");
}

SolverConfig default_config(Index n) {
  SolverConfig cfg;
  cfg.epsilon = 1e-5;
  cfg.alpha = 0.01;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  cfg.sigma = cfg.epsilon / (sqrt_n * sqrt_eps);
  const double tau0 = cfg.tau0(n);
  cfg.delta0 = std::max(1.0, tau0 * sqrt_n);
  cfg.delta_max = std::max(1000.0, cfg.delta0);
  cfg.budget_simplex_gradients = 100;
  cfg.delta_stop = 1e-13;
  return cfg;
}

SolverConfig default_config(const Problem& problem) {
  SolverConfig cfg = default_config(problem.dimension());
  if (problem.unrelaxable()) cfg.mode = SolveMode::UnrelaxableBox;
  return cfg;
}

double rho(double f_old, double f_new, double model_decrease) {
  require(model_decrease > 0.0, "rho: model decrease must be positive");
  return (f_old - f_new) / model_decrease;
}

ClassifyResult classify_and_update(double rho_value, double alpha, double delta, double tau,
                                   Index n, double delta_max) {
  ClassifyResult r;
  if (rho_value >= alpha) {  // false for NaN (degenerate) by IEEE semantics
    r.cls = IterClass::S;
    r.delta_next = std::min(2.0 * delta, delta_max);
    r.tau_next = tau;
    r.reuse_gradient = false;
    return r;
  }
  r.delta_next = 0.5 * delta;
  if (tau * std::sqrt(static_cast<double>(n)) <= r.delta_next) {
    r.cls = IterClass::U1;
    r.tau_next = tau;
    r.reuse_gradient = true;
  } else {
    r.cls = IterClass::U2;
    r.tau_next = 0.5 * tau;
    r.reuse_gradient = false;
  }
  return r;
}

Matrix bfgs_update(const Matrix& H, const Vector& s, const Vector& y) {
  const double sy = s.dot(y);
  if (std::abs(sy) <= 1e-14 * s.norm() * y.norm()) return H;
  const Vector Hs = H * s;
  const double sHs = s.dot(Hs);
  if (sHs == 0.0 || std::abs(sHs) <= 1e-14 * s.norm() * Hs.norm()) return H;
  Matrix out = H + (y * y.transpose()) / sy - (Hs * Hs.transpose()) / sHs;
  out = 0.5 * (out + out.transpose()).eval();
  return out;
}

void RunRecord::write_history_csv(std::ostream& os) const {
  os << "eval,best_f\n";
  std::string line;
  for (size_t i = 0; i < best_f_per_eval.size(); ++i) {
    line.clear();
    line += std::to_string(i + 1);
    line += ',';
    append_number(line, best_f_per_eval[i]);
    line += '\n';
    os << line;
  }
}

void RunRecord::write_iterations_csv(std::ostream& os) const {
  os << "k,class,delta,tau,rho,mdec,f\n";
  std::string line;
  for (const IterationRow& row : iterations) {
    line.clear();
    line += std::to_string(row.k);
    line += ',';
    line += to_string(row.cls);
    for (const double v : {row.delta, row.tau, row.rho, row.model_decrease, row.f}) {
      line += ',';
      append_number(line, v);
    }
    line += '\n';
    os << line;
  }
}

RunRecord solve(const Problem& problem, const SolverConfig& config,
                const DiagnosticOptions& diagnostics) {
  const Index n = problem.dimension();
  config.validate(n);
  const FeasibleSet& set = problem.feasible_set();
  if (config.mode == SolveMode::UnrelaxableBox)
    require(set.kind() == FeasibleSet::Kind::Box, "unrelaxable mode needs a box feasible set");
  if (problem.unrelaxable())
    require(config.mode == SolveMode::UnrelaxableBox,
            "unrelaxable problems must be solved in UnrelaxableBox mode");
  if (diagnostics.check_certificate) require(n <= 3, "certificate diagnostics need dimension <= 3");

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double tau0 = config.tau0(n);
  const long eval_cap = config.budget_simplex_gradients * (n + 1);

  RunRecord record;
  record.problem_name = problem.name();
  record.dimension = n;

  // Oracle wrapper: counts calls and tracks the best feasible value.
  double best_f = std::numeric_limits<double>::infinity();
  Vector best_x;
  long evals = 0;
  auto oracle = [&](const Vector& p) {
    const double value = problem.evaluate(p);
    ++evals;
    if (value < best_f && set.contains(p)) {
      best_f = value;
      best_x = p;
    }
    record.best_f_per_eval.push_back(best_f);
    return value;
  };
  // Facade routing the finite-difference evaluations through the wrapper.
  Problem counted(Problem::Init{
      .dimension = n,
      .objective = oracle,
      .feasible_set = set,
      .x0 = problem.x0(),
      .name = problem.name(),
  });

  Vector x = problem.x0();
  double fx = oracle(x);

  double delta = config.delta0;
  double tau = tau0;
  Matrix H = Matrix::Identity(n, n);
  FdGradient fd;
  bool have_g = false;

  bool bfgs_pending = false;
  Vector bfgs_s, g_prev;

  TrialStep warm;
  Termination termination = Termination::Budget;

  const bool fd_radius_active = diagnostics.check_fd_radius_bound && problem.has_exact_gradient() &&
                               problem.lipschitz().has_value();

  for (long k = 0;; ++k) {
    if (delta <= config.delta_stop) {
      termination = Termination::DeltaStop;
      break;
    }
    if (!have_g) {
      if (evals + n > eval_cap) {
        termination = Termination::Budget;
        break;
      }
      fd = config.mode == SolveMode::UnrelaxableBox
               ? bounded_gradient(counted, x, tau, fx, set)
               : forward_gradient(counted, x, tau, fx);
      have_g = true;
      if (bfgs_pending) {
        H = bfgs_update(H, bfgs_s, fd.g - g_prev);
        bfgs_pending = false;
      }
      if (fd.g.norm() == 0.0) {
        termination = Termination::StationaryFlag;
        break;
      }
      if (fd_radius_active) {
        ++record.invariants.fd_radius_checks;
        const double err = (problem.exact_gradient(x) - fd.g).norm();
        const double bound = 0.5 * *problem.lipschitz() * delta;
        if (!(err <= bound * (1.0 + 1e-9))) ++record.invariants.fd_radius_violations;
      }
    }

    ++record.invariants.stepsize_coupling_checks;
    if (!(tau * sqrt_n <= delta)) ++record.invariants.stepsize_coupling_violations;
    ++record.invariants.bound_checks;
    if (!(delta <= config.delta_max && tau <= tau0)) ++record.invariants.bound_violations;
    const Vector x_k = diagnostics.record_iterates ? x : Vector();

    QuadraticModel model{fx, fd.g, H};
    SubSolver solver = config.subsolver;
    if (solver == SubSolver::Auto)
      solver = set.kind() == FeasibleSet::Kind::AllSpace ? SubSolver::TruncatedCg
                                                         : SubSolver::ProjectedAccel;
    TrialStep step;
    switch (solver) {
      case SubSolver::CauchyOnly:
        step = set.kind() == FeasibleSet::Kind::AllSpace
                   ? cauchy_step(model, delta)
                   : generalized_cauchy_step(model, delta, set, x);
        break;
      case SubSolver::TruncatedCg:
        require(set.kind() == FeasibleSet::Kind::AllSpace,
                "truncated CG requires an unconstrained problem");
        step = truncated_cg(model, delta);
        break;
      case SubSolver::ProjectedAccel:
      case SubSolver::Auto:
        step = set.kind() == FeasibleSet::Kind::AllSpace
                   ? truncated_cg(model, delta)
                   : projected_accel(model, delta, set, x, warm);
        break;
    }

    if (diagnostics.check_certificate && step.model_decrease > 0.0) {
      ++record.invariants.certificate_checks;
      const double eta = eta_bruteforce(fd.g, x, set, config.delta_max);
      const double normH =
          Eigen::SelfAdjointEigenSolver<Matrix>(H).eigenvalues().cwiseAbs().maxCoeff();
      TrialStep slackened = step;
      slackened.model_decrease += diagnostics.slack;
      if (!decrease_certificate(slackened, eta, delta, normH, diagnostics.kappa))
        ++record.invariants.certificate_violations;
    }

    double rho_value = std::numeric_limits<double>::quiet_NaN();
    double f_trial = fx;
    Vector x_trial;
    if (step.model_decrease > 0.0) {
      if (evals + 1 > eval_cap) {
        termination = Termination::Budget;
        break;
      }
      x_trial = x + step.d;
      if (config.mode == SolveMode::UnrelaxableBox)
        x_trial = x_trial.cwiseMax(set.lower()).cwiseMin(set.upper());
      f_trial = oracle(x_trial);
      rho_value = rho(fx, f_trial, step.model_decrease);
    }

    const ClassifyResult next =
        classify_and_update(rho_value, config.alpha, delta, tau, n, config.delta_max);

    if (next.cls == IterClass::S) {
      bfgs_s = x_trial - x;
      g_prev = fd.g;
      bfgs_pending = true;
      x = std::move(x_trial);
      fx = f_trial;
      have_g = false;
    } else if (next.cls == IterClass::U2) {
      have_g = false;       // rebuild g with the halved tau at the same point
      bfgs_pending = false; // s would be zero
    }

    record.iterations.push_back({k, next.cls, delta, tau, rho_value, step.model_decrease, fx});
    if (diagnostics.record_iterates) record.iterates.push_back(x_k);
    delta = next.delta_next;
    tau = next.tau_next;
    warm = std::move(step);

    if (evals >= eval_cap) {
      termination = Termination::Budget;
      break;
    }
  }

  record.termination = termination;
  record.evals = evals;
  record.best_f = best_f;
  record.best_point = std::move(best_x);
  return record;
}

} // namespace trfds
