#pragma once

#include <trfds/driver.hpp>
#include <trfds/problem.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace trfds {

/// A benchmark problem entry: fresh instances on demand so every run gets
/// its own transcript.
struct BenchProblem {
  std::string name;
  std::function<Problem()> make;
};

/// A solver column in the data profile: a named configuration factory
/// (the budget is overridden by the suite).
struct BenchSolver {
  std::string name;
  std::function<SolverConfig(const Problem&)> make_config;
};

struct SuiteRun {
  std::vector<std::string> problem_names;
  std::vector<std::string> solver_names;
  std::vector<std::vector<RunRecord>> records;  // [solver][problem]
  long budget_simplex = 0;
  std::uint64_t seed = 0;
};

/// Runs every solver on every problem, capping each run at
/// budget_simplex * (n_p + 1) evaluations. Problems are dispatched across
/// a small worker pool; results are merged by index, so the output is a
/// pure function of (problems, solvers, budget, seed). Per-problem
/// failures are recorded (empty record, noted name) and the suite
/// continues.
SuiteRun run_suite(const std::vector<BenchProblem>& problems,
                   const std::vector<BenchSolver>& solvers, long budget_simplex,
                   std::uint64_t seed, const DiagnosticOptions& diagnostics = {},
                   int threads = 0);

/// The convergence test of More and Wild: a run solves the problem at
/// evaluation t when f0 - best_f(t) >= (1 - tolerance) (f0 - f_best).
struct ConvergenceTest {
  double tolerance = 1e-3;
  double f0 = 0.0;
  double f_best = 0.0;

  bool solved(double f) const { return f0 - f >= (1.0 - tolerance) * (f0 - f_best); }
  /// First evaluation count (1-based) at which the test is met.
  std::optional<long> solved_at(const RunRecord& record) const;
};

/// Fraction of problems solved per solver as a step function of the
/// budget alpha in simplex-gradient units ((n+1) evaluations).
struct DataProfile {
  std::vector<double> alpha;
  std::vector<std::string> solvers;
  std::vector<std::vector<double>> fraction;  // [solver][alpha index]
};

/// Builds the profile for one tolerance; f_best per problem is taken
/// across all solvers in the suite. Throws on an empty suite.
DataProfile data_profile(const SuiteRun& suite, double tolerance);

void write_profile_csv(const DataProfile& profile, std::ostream& os);  // alpha,solver,fraction
DataProfile parse_profile_csv(std::istream& is);

/// Standalone SVG step plot, one path per solver.
void write_profile_svg(const DataProfile& profile, std::ostream& os);

/// Writes `<stem>.csv` and `<stem>.svg`. Throws std::runtime_error on
/// I/O failure and std::invalid_argument on an empty profile.
void render_profile(const DataProfile& profile, const std::string& stem);

// Built-in suites and solver line-ups.
std::vector<BenchProblem> suite_unconstrained();
/// The bound-constrained variant: every More-Wild problem on the box
/// [0.1, 20]^n.
std::vector<BenchProblem> suite_mw_box(bool unrelaxable = true);
std::vector<BenchSolver> solvers_unconstrained();
std::vector<BenchSolver> solvers_box();

} // namespace trfds
