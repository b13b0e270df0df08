// trfds command-line front end: solve, bench, diagnose, calibrate.

#include <trfds/bench.hpp>
#include <trfds/driver.hpp>
#include <trfds/errors.hpp>
#include <trfds/fd_gradient.hpp>
#include <trfds/predprey.hpp>
#include <trfds/projections.hpp>
#include <trfds/registry.hpp>
#include <trfds/stationarity.hpp>
#include <trfds/subprocess_oracle.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace trfds;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Vector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ','))
    if (!token.empty()) values.push_back(std::stod(token));
  Vector v(static_cast<Index>(values.size()));
  for (size_t i = 0; i < values.size(); ++i) v[static_cast<Index>(i)] = values[i];
  return v;
}

struct CommonFlags {
  std::string out_dir = ".";
  long budget = 100;
  double alpha = -1, epsilon = -1, sigma = -1, delta0 = -1, delta_max = -1;
  std::string mode = "auto";
  std::string subsolver = "auto";
};

void add_solver_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--budget", flags.budget, "Budget in simplex gradients ((n+1) evaluations each)");
  cmd->add_option("--alpha", flags.alpha, "Acceptance threshold in (0,1)");
  cmd->add_option("--epsilon", flags.epsilon, "Target accuracy parameter");
  cmd->add_option("--sigma", flags.sigma, "Estimate of the gradient Lipschitz constant");
  cmd->add_option("--delta0", flags.delta0, "Initial trust-region radius");
  cmd->add_option("--delta-max", flags.delta_max, "Trust-region radius cap");
  cmd->add_option("--mode", flags.mode, "relaxable|unrelaxable (default: from problem)")
      ->check(CLI::IsMember({"auto", "relaxable", "unrelaxable"}));
  cmd->add_option("--subsolver", flags.subsolver, "auto|cauchy|cg|accel")
      ->check(CLI::IsMember({"auto", "cauchy", "cg", "accel"}));
  cmd->add_option("--out-dir", flags.out_dir, "Output directory");
}

SolverConfig build_config(const Problem& problem, const CommonFlags& flags) {
  SolverConfig cfg = default_config(problem);
  if (flags.epsilon > 0) cfg.epsilon = flags.epsilon;
  if (flags.sigma > 0) cfg.sigma = flags.sigma;
  if (flags.alpha >= 0) cfg.alpha = flags.alpha;
  if (flags.delta0 > 0) cfg.delta0 = flags.delta0;
  if (flags.delta_max > 0) cfg.delta_max = flags.delta_max;
  cfg.budget_simplex_gradients = flags.budget;
  if (flags.mode == "relaxable") cfg.mode = SolveMode::Relaxable;
  if (flags.mode == "unrelaxable") cfg.mode = SolveMode::UnrelaxableBox;
  if (flags.subsolver == "cauchy") cfg.subsolver = SubSolver::CauchyOnly;
  if (flags.subsolver == "cg") cfg.subsolver = SubSolver::TruncatedCg;
  if (flags.subsolver == "accel") cfg.subsolver = SubSolver::ProjectedAccel;
  cfg.validate(problem.dimension());
  return cfg;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  body(os);
  if (!os.good()) throw std::runtime_error("write failed on " + path.string());
}

// Flat key=value config file ('#' comments); values never override flags
// given on the command line.
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CLI::FileError("could not open config file: " + path);
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!trim(line).empty())
        throw CLI::ParseError("malformed config line: " + line, 1);
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) throw CLI::ParseError("unknown config key: " + key, 1);
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

struct SolveArgs {
  std::string problem;
  std::string oracle_cmd;
  long dim = 0;
  std::string x0_text;
  double oracle_timeout = 60.0;
  double lower = 0.0, upper = 0.0;
  bool have_bounds = false;
  CommonFlags flags;
};

Problem build_solve_problem(const SolveArgs& args) {
  const bool unrelaxable = args.flags.mode == "unrelaxable";
  if (!args.oracle_cmd.empty()) {
    require(args.dim >= 1, "--oracle-cmd needs --dim");
    Problem::Init init;
    init.dimension = args.dim;
    init.objective = subprocess_oracle(args.oracle_cmd, args.oracle_timeout);
    init.name = "oracle";
    init.x0 = args.x0_text.empty() ? Vector(Vector::Zero(args.dim)) : parse_vector(args.x0_text);
    require(init.x0.size() == args.dim, "--x0 dimension mismatch");
    if (args.have_bounds) {
      init.feasible_set = FeasibleSet::box(Vector::Constant(args.dim, args.lower),
                                           Vector::Constant(args.dim, args.upper));
      init.unrelaxable = unrelaxable;
    }
    return Problem(std::move(init));
  }
  require(!args.problem.empty(), "either --problem or --oracle-cmd is required");
  if (args.have_bounds) {
    Problem base = make_problem(args.problem);
    const Index n = base.dimension();
    return make_problem(args.problem,
                        FeasibleSet::box(Vector::Constant(n, args.lower), Vector::Constant(n, args.upper)),
                        unrelaxable);
  }
  return make_problem(args.problem);
}

void warn_on_capped_projections(long before) {
  const long hits = dykstra_cap_hits() - before;
  if (hits > 0)
    std::cerr << "warning: " << hits << " Dykstra projection(s) hit the iteration cap\n";
}

int run_solve(const SolveArgs& args) {
  Problem problem = build_solve_problem(args);
  const SolverConfig config = build_config(problem, args.flags);
  const long cap_before = dykstra_cap_hits();
  const RunRecord record = solve(problem, config);
  warn_on_capped_projections(cap_before);

  fs::create_directories(args.flags.out_dir);
  write_file(fs::path(args.flags.out_dir) / "history.csv",
             [&](std::ostream& os) { record.write_history_csv(os); });
  write_file(fs::path(args.flags.out_dir) / "iterations.csv",
             [&](std::ostream& os) { record.write_iterations_csv(os); });

  std::cout << "problem=" << record.problem_name << "\n"
            << "evals=" << record.evals << "\n"
            << "best_f=" << fmt(record.best_f) << "\n"
            << "termination=" << to_string(record.termination) << "\n";
  return 0;
}

struct BenchArgs {
  std::string problems = "unconstrained";
  std::vector<std::string> tolerances = {"1e-1", "1e-3", "1e-5", "1e-7"};
  long budget = 100;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_dir = ".";
};

int run_bench(const BenchArgs& args) {
  std::vector<BenchProblem> problems;
  std::vector<BenchSolver> solvers;
  if (args.problems == "unconstrained") {
    problems = suite_unconstrained();
    solvers = solvers_unconstrained();
  } else if (args.problems == "mw-box") {
    problems = suite_mw_box(false);  // relaxable instances so both modes can run
    solvers = solvers_box();
  } else {
    for (std::string name : [&] {
           std::vector<std::string> names;
           std::stringstream ss(args.problems);
           std::string tok;
           while (std::getline(ss, tok, ','))
             if (!tok.empty()) names.push_back(tok);
           return names;
         }())
      problems.push_back({name, [name] { return make_problem(name); }});
    solvers = solvers_unconstrained();
  }

  const long cap_before = dykstra_cap_hits();
  const SuiteRun suite = run_suite(problems, solvers, args.budget, args.seed, {}, args.threads);
  warn_on_capped_projections(cap_before);
  fs::create_directories(args.out_dir);
  for (const std::string& tol_text : args.tolerances) {
    const double tol = std::stod(tol_text);
    const DataProfile profile = data_profile(suite, tol);
    render_profile(profile, (fs::path(args.out_dir) / ("profile_" + tol_text)).string());
  }
  for (size_t s = 0; s < suite.solver_names.size(); ++s)
    for (size_t p = 0; p < suite.problem_names.size(); ++p) {
      const RunRecord& r = suite.records[s][p];
      std::cout << suite.solver_names[s] << "," << r.problem_name << ",evals=" << r.evals
                << ",best_f=" << fmt(r.best_f) << "\n";
    }
  return 0;
}

struct DiagnoseArgs {
  std::string problem;
  std::string at_text;
  double r = 0.0;
  double tau = 0.0;
  double lower = 0.0, upper = 0.0;
  bool have_bounds = false;
};

int run_diagnose(const DiagnoseArgs& args) {
  Problem problem = [&] {
    if (!args.have_bounds) return make_problem(args.problem);
    Problem base = make_problem(args.problem);
    const Index n = base.dimension();
    return make_problem(args.problem,
                        FeasibleSet::box(Vector::Constant(n, args.lower), Vector::Constant(n, args.upper)),
                        false);
  }();
  const Vector x = args.at_text.empty() ? problem.x0() : parse_vector(args.at_text);
  require(x.size() == problem.dimension(), "--at dimension mismatch");
  require(problem.feasible_set().contains(x), "--at must be feasible");

  const SolverConfig cfg = default_config(problem);
  const double r = args.r > 0 ? args.r : cfg.delta_max;
  const double tau = args.tau > 0 ? args.tau : cfg.tau0(problem.dimension());

  const double fx = problem.evaluate(x);
  const FdGradient fd = problem.unrelaxable()
                            ? bounded_gradient(problem, x, tau, fx, problem.feasible_set())
                            : forward_gradient(problem, x, tau, fx);

  std::cout << "problem=" << problem.name() << "\n"
            << "r=" << fmt(r) << "\n"
            << "tau=" << fmt(tau) << "\n"
            << "f=" << fmt(fx) << "\n";
  if (problem.has_exact_gradient() && problem.lipschitz().has_value()) {
    const StationarityReport report = measure_gap(problem, x, fd.g, r, tau, *problem.lipschitz());
    std::cout << "eta=" << fmt(report.eta) << "\n"
              << "psi=" << fmt(*report.psi) << "\n"
              << "gap=" << fmt(*report.gap) << "\n"
              << "gap_bound=" << fmt(*report.gap_bound) << "\n"
              << "gap_within_bound=" << (report.gap_within_bound ? "true" : "false") << "\n";
  } else {
    std::cout << "eta=" << fmt(eta_measure(fd.g, x, problem.feasible_set(), r)) << "\n";
    if (problem.has_exact_gradient())
      std::cout << "psi=" << fmt(psi_measure(problem, x, r)) << "\n";
  }
  return 0;
}

struct CalibrateArgs {
  std::uint64_t seed = 1;
  long budget = 350;
  double noise_scale = 10.0;
  std::string out_dir = ".";
};

int run_calibrate(const CalibrateArgs& args) {
  const PredPreyDataset dataset = make_dataset(PredPreyParams::truth(), args.seed, args.noise_scale);
  const long cap_before = dykstra_cap_hits();
  const CalibrationResult result =
      calibrate(dataset, PredPreyParams::initial_guess().to_vector(),
                PredPreyParams::lower_bounds(), PredPreyParams::upper_bounds(), args.budget);
  warn_on_capped_projections(cap_before);

  fs::create_directories(args.out_dir);
  write_file(fs::path(args.out_dir) / "dataset.csv",
             [&](std::ostream& os) { dataset.write_csv(os); });
  const Trajectory fit = integrate_predprey(result.fitted, predprey_y0(), predprey_z0(), dataset.times);
  write_file(fs::path(args.out_dir) / "fit.csv", [&](std::ostream& os) { fit.write_csv(os); });
  write_file(fs::path(args.out_dir) / "decrease.csv",
             [&](std::ostream& os) { result.record.write_history_csv(os); });

  const Vector fitted = result.fitted.to_vector();
  const char* names[] = {"zeta", "theta", "lambda", "mu", "nu", "xi"};
  for (int i = 0; i < 6; ++i) std::cout << names[i] << "=" << fmt(fitted[i]) << "\n";
  std::cout << "evals=" << result.record.evals << "\n"
            << "best_f=" << fmt(result.record.best_f) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derivative-free trust-region solver based on finite differences"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  std::string solve_config, bench_config, diag_config, cal_config;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Minimize a built-in or external problem");
  solve_cmd->add_option("--config", solve_config, "Flat key=value config file (flags win)");
  solve_cmd->add_option("--problem", solve_args.problem, "Registry problem name");
  solve_cmd->add_option("--oracle-cmd", solve_args.oracle_cmd,
                        "External oracle command (line protocol on stdin/stdout)");
  solve_cmd->add_option("--dim", solve_args.dim, "Dimension for --oracle-cmd");
  solve_cmd->add_option("--x0", solve_args.x0_text, "Comma-separated start point for --oracle-cmd");
  solve_cmd->add_option("--oracle-timeout", solve_args.oracle_timeout, "Oracle timeout in seconds");
  CLI::Option* lo = solve_cmd->add_option("--lower", solve_args.lower, "Scalar lower bound (box)");
  CLI::Option* up = solve_cmd->add_option("--upper", solve_args.upper, "Scalar upper bound (box)");
  lo->needs(up);
  up->needs(lo);
  add_solver_flags(solve_cmd, solve_args.flags);

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite and emit data profiles");
  bench_cmd->add_option("--config", bench_config, "Flat key=value config file (flags win)");
  bench_cmd->add_option("--problems", bench_args.problems,
                        "unconstrained|mw-box|comma-separated registry names");
  bench_cmd->add_option("--budget", bench_args.budget, "Budget in simplex gradients");
  bench_cmd->add_option("--tolerances", bench_args.tolerances, "Convergence-test tolerances")
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench_args.seed, "Suite seed");
  bench_cmd->add_option("--threads", bench_args.threads, "Worker threads (0 = hardware)");
  bench_cmd->add_option("--out-dir", bench_args.out_dir, "Output directory");

  DiagnoseArgs diag_args;
  CLI::App* diag_cmd = app.add_subcommand("diagnose", "Stationarity measures at a point");
  diag_cmd->add_option("--config", diag_config, "Flat key=value config file (flags win)");
  diag_cmd->add_option("--problem", diag_args.problem, "Registry problem name")->required();
  diag_cmd->add_option("--at", diag_args.at_text, "Comma-separated point (default: x0)");
  diag_cmd->add_option("--r", diag_args.r, "Stationarity radius (default: delta_max)");
  diag_cmd->add_option("--tau", diag_args.tau, "FD stepsize (default: tau0)");
  CLI::Option* dlo = diag_cmd->add_option("--lower", diag_args.lower, "Scalar lower bound (box)");
  CLI::Option* dup = diag_cmd->add_option("--upper", diag_args.upper, "Scalar upper bound (box)");
  dlo->needs(dup);
  dup->needs(dlo);

  CalibrateArgs cal_args;
  CLI::App* cal_cmd = app.add_subcommand("calibrate", "Fit the predator-prey model to synthetic data");
  cal_cmd->add_option("--config", cal_config, "Flat key=value config file (flags win)");
  cal_cmd->add_option("--seed", cal_args.seed, "Dataset noise seed");
  cal_cmd->add_option("--budget", cal_args.budget, "Evaluation budget");
  cal_cmd->add_option("--noise-scale", cal_args.noise_scale, "Observation noise scale");
  cal_cmd->add_option("--out-dir", cal_args.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) {
      if (!solve_config.empty()) apply_config(solve_cmd, solve_config);
      solve_args.have_bounds = lo->count() > 0;
      return run_solve(solve_args);
    }
    if (bench_cmd->parsed()) {
      if (!bench_config.empty()) apply_config(bench_cmd, bench_config);
      return run_bench(bench_args);
    }
    if (diag_cmd->parsed()) {
      if (!diag_config.empty()) apply_config(diag_cmd, diag_config);
      diag_args.have_bounds = dlo->count() > 0;
      return run_diagnose(diag_args);
    }
    if (cal_cmd->parsed()) {
      if (!cal_config.empty()) apply_config(cal_cmd, cal_config);
      return run_calibrate(cal_args);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
