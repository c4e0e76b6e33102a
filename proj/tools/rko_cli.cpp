// Command-line front end: solve one instance, run a benchmark from a config
// file, rebuild profiles or Wilcoxon tables from a results CSV, or compute
// the exact optimum of a tiny instance.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "rko/harness/experiment.hpp"
#include "rko/problems/registry.hpp"
#include "rko/solvers.hpp"

namespace {

using namespace rko;

ProblemKind parse_problem(const std::string& name) {
  auto p = problem_from_string(name);
  if (!p) throw CLI::ValidationError("--problem", "unknown problem " + name);
  return *p;
}

struct SolveOptions {
  std::string problem;
  std::string instance;
  std::string method{harness::kPortfolioMethod};
  std::uint64_t seed = 1;
  std::optional<double> time_limit;
  std::uint64_t max_evals = 0;
  std::size_t alpha = 2;
  std::size_t workers = 0;
  bool q_learning = false;
  std::string csv;
  std::string trace;
  std::string pool_dump;
  std::string qtables;
};

int solve(const SolveOptions& o) {
  const ProblemKind kind = parse_problem(o.problem);
  const auto problem = problems::load_problem(kind, o.instance, {o.alpha});
  PortfolioConfig cfg;
  if (o.method == harness::kPortfolioMethod) {
    cfg = default_portfolio(kind);
  } else {
    auto solver = solver_from_string(o.method);
    if (!solver) throw CLI::ValidationError("--method", "unknown method " + o.method);
    cfg = default_portfolio(kind, {*solver});
  }
  cfg.seed = o.seed;
  cfg.q_learning = o.q_learning;
  cfg.stop.time_limit = o.time_limit.value_or(problems::default_time_limit(kind, problem.size));
  cfg.stop.max_evaluations = o.max_evals;
  cfg.workers = o.workers;
  cfg.trace_path = o.trace;
  cfg.pool_dump_path = o.pool_dump;
  cfg.qtable_dir = o.qtables;

  const auto result = run_portfolio(*problem.decoder, cfg);
  const auto& best = result.best;
  const std::string solution = problem.decoder->describe(best.best_keys);
  std::cout << std::setprecision(12) << "objective " << best.best.objective << '\n'
            << "time_to_best " << best.time_to_best << '\n'
            << "found_by " << best.solver << '\n'
            << "solution " << solution << '\n';

  if (!o.csv.empty()) {
    std::ofstream out(o.csv);
    if (!out) throw std::runtime_error("cannot write " + o.csv);
    out << "instance,method,seed,objective,feasible,evaluations,evaluations_to_best,solution\n"
        << std::setprecision(17) << harness::instance_name(o.instance) << ',' << o.method << ',' << o.seed << ','
        << best.best.objective << ',' << (best.best.feasible() ? 1 : 0) << ',' << best.evaluations << ','
        << best.evaluations_to_best << ',' << solution << '\n';
  }
  return 0;
}

int bench(const std::string& config_path) {
  const auto cfg = harness::load_config(config_path);
  const auto report = harness::run_experiment(cfg);
  std::cout << report.rows.size() << " cells, " << report.failed << " failed; results in " << cfg.output << '\n';
  return report.failed == 0 ? 0 : 1;
}

std::vector<harness::ResultRow> load_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return harness::read_results_csv(in);
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  body(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-key optimizer: metaheuristic portfolio over random-key decoders"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve_cmd = app.add_subcommand("solve", "Optimize one instance and print the best solution");
  solve_cmd->add_option("--problem", so.problem, "anpmp, ncgpp, thlp, tsp or setcover")->required();
  solve_cmd->add_option("--instance", so.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--method", so.method, "portfolio or a solver name (brkga, sa, grasp, ils, vns, pso, ga, lns)");
  solve_cmd->add_option("--seed", so.seed, "Master seed");
  solve_cmd->add_option("--time-limit", so.time_limit, "Seconds (default depends on the problem size)");
  solve_cmd->add_option("--max-evals", so.max_evals, "Per-solver evaluation budget; 0 = unlimited");
  solve_cmd->add_option("--alpha", so.alpha, "Neighbor count for p-median instances");
  solve_cmd->add_option("--workers", so.workers, "0 = one thread per solver, 1 = sequential and deterministic");
  solve_cmd->add_flag("--qlearning", so.q_learning, "Control parameters online with Q-Learning");
  solve_cmd->add_option("--csv", so.csv, "Write a one-row result CSV");
  solve_cmd->add_option("--trace", so.trace, "Write the improvement trace CSV");
  solve_cmd->add_option("--pool-dump", so.pool_dump, "Write the final elite pool");
  solve_cmd->add_option("--qtables", so.qtables, "Directory for Q-table CSVs");

  std::string config_path;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment described by a config file");
  bench_cmd->add_option("config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);

  std::string results_path, bks_path, out_path;
  double tolerance = 0.0;
  auto* profile_cmd = app.add_subcommand("profile", "Performance profile CSV from a results CSV");
  auto* stats_cmd = app.add_subcommand("stats", "Wilcoxon p-value matrix from a results CSV");
  for (auto* cmd : {profile_cmd, stats_cmd}) {
    cmd->add_option("results", results_path, "results.csv from bench")->required()->check(CLI::ExistingFile);
    cmd->add_option("--bks", bks_path, "Best-known values, one 'instance value' per line");
    cmd->add_option("--output", out_path, "Output CSV (default stdout)");
  }
  profile_cmd->add_option("--tolerance", tolerance, "RPD percent counted as solved");

  std::string oracle_problem, oracle_instance;
  std::size_t oracle_alpha = 2;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum of a tiny instance as a BKS line");
  oracle_cmd->add_option("--problem", oracle_problem)->required();
  oracle_cmd->add_option("--instance", oracle_instance)->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--alpha", oracle_alpha);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return solve(so);
    if (*bench_cmd) return bench(config_path);
    if (*profile_cmd || *stats_cmd) {
      const auto rows = load_results(results_path);
      std::map<std::string, double> bks;
      if (!bks_path.empty()) bks = harness::load_bks(bks_path);
      if (*profile_cmd) {
        emit(out_path, [&](std::ostream& o) {
          harness::write_profile_csv(o, harness::profile_from_results(rows, bks, tolerance));
        });
      } else {
        emit(out_path, [&](std::ostream& o) { harness::write_wilcoxon_csv(o, rows, bks); });
      }
      return 0;
    }
    if (*oracle_cmd) {
      const auto problem = problems::load_problem(parse_problem(oracle_problem), oracle_instance, {oracle_alpha});
      const auto opt = problem.brute_force();
      std::cout << std::setprecision(17) << harness::instance_name(oracle_instance) << ' ' << opt.objective << '\n';
      std::cerr << opt.certificate << '\n';
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
