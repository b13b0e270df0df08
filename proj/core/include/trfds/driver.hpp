#pragma once

#include <trfds/fd_gradient.hpp>
#include <trfds/model.hpp>
#include <trfds/problem.hpp>
#include <trfds/types.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace trfds {

enum class SolveMode { Relaxable, UnrelaxableBox };
enum class SubSolver { Auto, CauchyOnly, TruncatedCg, ProjectedAccel };
enum class IterClass { S, U1, U2 };
enum class Termination { Budget, DeltaStop, StationaryFlag };

const char* to_string(IterClass c);
const char* to_string(Termination t);

struct SolverConfig {
  double epsilon = 1e-5;
  double sigma = 1.0;
  double alpha = 0.01;
  double delta0 = 1.0;
  double delta_max = 1000.0;
  long budget_simplex_gradients = 100;
  double delta_stop = 1e-13;
  SolveMode mode = SolveMode::Relaxable;
  SubSolver subsolver = SubSolver::Auto;

  double tau0(Index n) const;
  /// Throws std::invalid_argument when the Step 0 contract
  /// (tau0 sqrt(n) <= delta0 <= delta_max, alpha in (0,1), ...) fails.
  void validate(Index n) const;
};

/// The paper's default parameters: epsilon = 1e-5, alpha = 0.01,
/// sigma = epsilon / (sqrt(n) sqrt(machine eps)) (so tau0 = sqrt(eps)),
/// delta0 = max{1, tau0 sqrt(n)}, delta_max = max{1000, delta0}, a budget
/// of 100 simplex gradients, and the stopping radius 1e-13.
SolverConfig default_config(Index n);
SolverConfig default_config(const Problem& problem);

/// Acceptance ratio rho = (f_old - f_new) / model_decrease. Throws on a
/// nonpositive model decrease: such iterations must be classified
/// unsuccessful without evaluating rho.
double rho(double f_old, double f_new, double model_decrease);

struct ClassifyResult {
  IterClass cls;
  double delta_next;
  double tau_next;
  bool reuse_gradient;  // U1: skip Step 1, keep g and H
};

/// Steps 3-4 state update: S doubles delta (capped), U halves it and
/// either reuses tau/g/H (U1, when tau sqrt(n) <= delta_next) or halves
/// tau and rebuilds the gradient (U2). A NaN rho is treated as
/// unsuccessful (degenerate subproblem).
ClassifyResult classify_and_update(double rho_value, double alpha, double delta, double tau,
                                   Index n, double delta_max);

/// Safeguarded BFGS update with s = x_{k+1} - x_k, y = g_{k+1} - g_k;
/// skipped when |<s, y>| or |<s, H s>| is numerically zero. The result is
/// explicitly symmetrized.
Matrix bfgs_update(const Matrix& H, const Vector& s, const Vector& y);

struct IterationRow {
  long k = 0;
  IterClass cls = IterClass::S;
  double delta = 0.0;
  double tau = 0.0;
  double rho = 0.0;  // NaN on degenerate iterations
  double model_decrease = 0.0;
  double f = 0.0;  // f(x_{k+1})
};

/// Always-on invariant counters plus the opt-in diagnostic certificates.
struct InvariantLog {
  long stepsize_coupling_checks = 0, stepsize_coupling_violations = 0;        // tau_k sqrt(n) <= delta_k
  long bound_checks = 0, bound_violations = 0;            // delta<=delta_max, tau<=tau0, monotone f
  long fd_radius_checks = 0, fd_radius_violations = 0;      // ||grad f - g|| <= (L/2) delta
  long certificate_checks = 0, certificate_violations = 0;            // kappa-Cauchy decrease certificate
  long violations() const {
    return stepsize_coupling_violations + bound_violations + fd_radius_violations + certificate_violations;
  }
};

struct DiagnosticOptions {
  bool check_fd_radius_bound = false;  // needs exact gradient and known L
  bool check_certificate = false;     // needs dimension <= 3; brute-force eta at delta_max
  bool record_iterates = false;
  double kappa = 0.5;
  double slack = 1e-8;
};

struct RunRecord {
  std::string problem_name;
  std::string solver_name = "trfds";
  Index dimension = 0;
  std::vector<double> best_f_per_eval;  // best feasible value after each oracle call
  std::vector<IterationRow> iterations;
  std::vector<Vector> iterates;  // x_k per recorded iteration (diagnostics only)
  Termination termination = Termination::Budget;
  Vector best_point;
  double best_f = 0.0;
  long evals = 0;
  InvariantLog invariants;

  /// CSV "eval,best_f" (one row per oracle call).
  void write_history_csv(std::ostream& os) const;
  /// CSV "k,class,delta,tau,rho,mdec,f".
  void write_iterations_csv(std::ostream& os) const;
};

/// Runs the full finite-difference trust-region loop on the problem and
/// returns the run record; the best feasible evaluated point is reported,
/// not necessarily the last iterate.
RunRecord solve(const Problem& problem, const SolverConfig& config,
                const DiagnosticOptions& diagnostics = {});

} // namespace trfds
