#include <trfds/bench.hpp>

#include <trfds/errors.hpp>
#include <trfds/registry.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace trfds {

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

SuiteRun run_suite(const std::vector<BenchProblem>& problems,
                   const std::vector<BenchSolver>& solvers, long budget_simplex,
                   std::uint64_t seed, const DiagnosticOptions& diagnostics, int threads) {
  require(!problems.empty() && !solvers.empty(), "run_suite needs problems and solvers");
  require(budget_simplex >= 1, "run_suite: budget must be positive");

  SuiteRun suite;
  suite.budget_simplex = budget_simplex;
  suite.seed = seed;
  for (const auto& p : problems) suite.problem_names.push_back(p.name);
  for (const auto& s : solvers) suite.solver_names.push_back(s.name);
  suite.records.assign(solvers.size(), std::vector<RunRecord>(problems.size()));

  const size_t tasks = solvers.size() * problems.size();
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const size_t task = cursor.fetch_add(1);
      if (task >= tasks) return;
      const size_t si = task / problems.size();
      const size_t pi = task % problems.size();
      RunRecord& slot = suite.records[si][pi];
      try {
        Problem problem = problems[pi].make();
        SolverConfig config = solvers[si].make_config(problem);
        config.budget_simplex_gradients = budget_simplex;
        slot = solve(problem, config, diagnostics);
      } catch (const std::exception& e) {
        slot = RunRecord{};  // failed run: empty history, noted below
        slot.problem_name = problems[pi].name + " [failed: " + e.what() + "]";
      }
      slot.solver_name = solvers[si].name;
      if (slot.problem_name.empty()) slot.problem_name = problems[pi].name;
    }
  };

  int pool = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  pool = std::max(1, std::min<int>(pool, static_cast<int>(tasks)));
  std::vector<std::thread> team;
  team.reserve(pool);
  for (int i = 0; i < pool; ++i) team.emplace_back(worker);
  for (auto& t : team) t.join();
  return suite;
}

std::optional<long> ConvergenceTest::solved_at(const RunRecord& record) const {
  for (size_t i = 0; i < record.best_f_per_eval.size(); ++i)
    if (solved(record.best_f_per_eval[i])) return static_cast<long>(i + 1);
  return std::nullopt;
}

DataProfile data_profile(const SuiteRun& suite, double tolerance) {
  require(tolerance > 0.0 && tolerance < 1.0, "data_profile: tolerance must lie in (0,1)");
  const size_t ns = suite.records.size();
  require(ns > 0 && !suite.records[0].empty(), "data_profile: empty suite");
  const size_t np = suite.records[0].size();

  // Per-problem f0 and f_best across all solvers.
  std::vector<double> f0(np), fbest(np);
  for (size_t p = 0; p < np; ++p) {
    double best = std::numeric_limits<double>::infinity();
    double start = std::numeric_limits<double>::quiet_NaN();
    for (size_t s = 0; s < ns; ++s) {
      const RunRecord& r = suite.records[s][p];
      if (r.best_f_per_eval.empty()) continue;
      if (std::isnan(start)) start = r.best_f_per_eval.front();
      best = std::min(best, r.best_f);
    }
    f0[p] = start;
    fbest[p] = best;
  }

  // Solve times in simplex-gradient units.
  std::vector<std::vector<double>> alpha_solved(ns, std::vector<double>(np, -1.0));
  std::set<double> grid{0.0, static_cast<double>(suite.budget_simplex)};
  for (size_t s = 0; s < ns; ++s)
    for (size_t p = 0; p < np; ++p) {
      const RunRecord& r = suite.records[s][p];
      if (r.best_f_per_eval.empty() || std::isnan(f0[p])) continue;
      const ConvergenceTest test{tolerance, f0[p], fbest[p]};
      if (const auto t = test.solved_at(r)) {
        const double a = static_cast<double>(*t) / static_cast<double>(r.dimension + 1);
        alpha_solved[s][p] = a;
        grid.insert(a);
      }
    }

  DataProfile profile;
  profile.solvers = suite.solver_names;
  profile.alpha.assign(grid.begin(), grid.end());
  profile.fraction.assign(ns, std::vector<double>(profile.alpha.size(), 0.0));
  for (size_t s = 0; s < ns; ++s)
    for (size_t j = 0; j < profile.alpha.size(); ++j) {
      long solved = 0;
      for (size_t p = 0; p < np; ++p)
        if (alpha_solved[s][p] >= 0.0 && alpha_solved[s][p] <= profile.alpha[j]) ++solved;
      profile.fraction[s][j] = static_cast<double>(solved) / static_cast<double>(np);
    }
  return profile;
}

void write_profile_csv(const DataProfile& profile, std::ostream& os) {
  os << "alpha,solver,fraction\n";
  for (size_t s = 0; s < profile.solvers.size(); ++s)
    for (size_t j = 0; j < profile.alpha.size(); ++j)
      os << format_number(profile.alpha[j]) << ',' << profile.solvers[s] << ','
         << format_number(profile.fraction[s][j]) << '\n';
}

DataProfile parse_profile_csv(std::istream& is) {
  DataProfile profile;
  std::string line;
  require(static_cast<bool>(std::getline(is, line)) && line == "alpha,solver,fraction",
          "parse_profile_csv: bad header");
  std::map<std::string, size_t> index;
  std::vector<double> alphas_first;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    require(c1 != std::string::npos && c2 != std::string::npos, "parse_profile_csv: bad row");
    const double a = std::stod(line.substr(0, c1));
    const std::string solver = line.substr(c1 + 1, c2 - c1 - 1);
    const double frac = std::stod(line.substr(c2 + 1));
    auto [it, inserted] = index.emplace(solver, profile.solvers.size());
    if (inserted) {
      profile.solvers.push_back(solver);
      profile.fraction.emplace_back();
    }
    if (it->second == 0) profile.alpha.push_back(a);
    profile.fraction[it->second].push_back(frac);
  }
  return profile;
}

void write_profile_svg(const DataProfile& profile, std::ostream& os) {
  require(!profile.alpha.empty() && !profile.solvers.empty(), "empty profile");
  const double width = 640, height = 480, ml = 60, mr = 20, mt = 20, mb = 45;
  const double plot_w = width - ml - mr, plot_h = height - mt - mb;
  const double amax = std::max(1e-9, profile.alpha.back());
  auto sx = [&](double a) { return ml + plot_w * (a / amax); };
  auto sy = [&](double f) { return mt + plot_h * (1.0 - f); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes.
  os << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << ml + plot_w << "\" y2=\""
     << mt + plot_h << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + plot_h
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double a = amax * i / 5.0, f = i / 5.0;
    os << "<text x=\"" << sx(a) << "\" y=\"" << mt + plot_h + 18
       << "\" font-size=\"11\" text-anchor=\"middle\">" << format_number(a) << "</text>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << sy(f) + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(f) << "</text>\n";
  }
  os << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 8
     << "\" font-size=\"12\" text-anchor=\"middle\">budget (simplex gradients)</text>\n";
  // One step path per solver.
  for (size_t s = 0; s < profile.solvers.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    os << "<path class=\"profile\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
    os << "M " << sx(profile.alpha.front()) << ' ' << sy(profile.fraction[s].front());
    for (size_t j = 1; j < profile.alpha.size(); ++j)
      os << " H " << sx(profile.alpha[j]) << " V " << sy(profile.fraction[s][j]);
    os << " H " << sx(amax);
    os << "\"/>\n";
    os << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 + 16 * static_cast<double>(s)
       << "\" font-size=\"12\" fill=\"" << color << "\">" << profile.solvers[s] << "</text>\n";
  }
  os << "</svg>\n";
}

void render_profile(const DataProfile& profile, const std::string& stem) {
  require(!profile.alpha.empty() && !profile.solvers.empty(), "render_profile: empty profile");
  {
    std::ofstream csv(stem + ".csv", std::ios::binary);
    if (!csv) throw std::runtime_error("render_profile: cannot open " + stem + ".csv");
    write_profile_csv(profile, csv);
    if (!csv.good()) throw std::runtime_error("render_profile: write failed on " + stem + ".csv");
  }
  {
    std::ofstream svg(stem + ".svg", std::ios::binary);
    if (!svg) throw std::runtime_error("render_profile: cannot open " + stem + ".svg");
    write_profile_svg(profile, svg);
    if (!svg.good()) throw std::runtime_error("render_profile: write failed on " + stem + ".svg");
  }
}

std::vector<BenchProblem> suite_unconstrained() {
  std::vector<BenchProblem> out;
  for (const std::string& name :
       {"sphere5", "quad5", "quad8_ill", "rosenbrock"})
    out.push_back({name, [name] { return make_problem(name); }});
  for (const std::string& name : more_wild_names())
    out.push_back({name, [name] { return make_problem(name); }});
  return out;
}

std::vector<BenchProblem> suite_mw_box(bool unrelaxable) {
  std::vector<BenchProblem> out;
  for (const std::string& name : more_wild_names()) {
    out.push_back({name + "_box", [name, unrelaxable] {
                     Problem base = make_problem(name);
                     const Index n = base.dimension();
                     return make_problem(
                         name, FeasibleSet::box(Vector::Constant(n, 0.1), Vector::Constant(n, 20.0)),
                         unrelaxable);
                   }});
  }
  return out;
}

std::vector<BenchSolver> solvers_unconstrained() {
  return {
      {"trfds", [](const Problem& p) { return default_config(p); }},
      {"trfds-cauchy",
       [](const Problem& p) {
         SolverConfig cfg = default_config(p);
         cfg.subsolver = SubSolver::CauchyOnly;
         return cfg;
       }},
  };
}

std::vector<BenchSolver> solvers_box() {
  return {
      {"trfds-unrelaxable",
       [](const Problem& p) {
         SolverConfig cfg = default_config(p);
         cfg.mode = SolveMode::UnrelaxableBox;
         return cfg;
       }},
      {"trfds-relaxable",
       [](const Problem& p) {
         SolverConfig cfg = default_config(p);
         cfg.mode = SolveMode::Relaxable;
         return cfg;
       }},
      {"trfds-cauchy",
       [](const Problem& p) {
         SolverConfig cfg = default_config(p);
         cfg.mode = SolveMode::UnrelaxableBox;
         cfg.subsolver = SubSolver::CauchyOnly;
         return cfg;
       }},
  };
}

} // namespace trfds
