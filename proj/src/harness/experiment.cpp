#include "rko/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "rko/problems/registry.hpp"

namespace rko::harness {

void ExperimentConfig::validate() const {
  if (instances.empty()) throw std::invalid_argument("config: no instances");
  if (methods.empty()) throw std::invalid_argument("config: no methods");
  for (const auto& m : methods) {
    if (m != kPortfolioMethod && !solver_from_string(m)) throw std::invalid_argument("config: unknown method " + m);
  }
  if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  if (time_limit && !(*time_limit > 0.0)) throw std::invalid_argument("config: time limit must be positive");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + " expects a number, got '" + v + "'");
  }
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x < 0.0 || x != std::floor(x)) throw std::invalid_argument("config: " + key + " expects a non-negative integer");
  return static_cast<std::uint64_t>(x);
}

}  // namespace

ExperimentConfig read_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "problem") {
      auto p = problem_from_string(value);
      if (!p) throw std::invalid_argument("config: unknown problem " + value);
      cfg.problem = *p;
    } else if (key == "instances") {
      cfg.instances = split(value, ',');
    } else if (key == "methods") {
      cfg.methods = split(value, ',');
    } else if (key == "runs") {
      cfg.runs = to_count(key, value);
    } else if (key == "time_limit") {
      if (value == "auto") {
        cfg.time_limit.reset();
      } else {
        cfg.time_limit = to_double(key, value);
      }
    } else if (key == "max_evals") {
      cfg.max_evaluations = to_count(key, value);
    } else if (key == "alpha") {
      cfg.alpha = to_count(key, value);
    } else if (key == "seed") {
      cfg.seed = to_count(key, value);
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "bks") {
      cfg.bks_path = value;
    } else if (key == "params") {
      if (value != "table" && value != "qlearning") throw std::invalid_argument("config: params must be table or qlearning");
      cfg.q_learning = value == "qlearning";
    } else if (key == "workers") {
      cfg.workers = to_count(key, value);
    } else if (key == "portfolio_workers") {
      cfg.portfolio_workers = to_count(key, value);
    } else if (key == "tolerance") {
      cfg.tolerance = to_double(key, value);
    } else if (key.rfind("override.", 0) == 0) {
      const auto parts = split(key, '.');
      if (parts.size() != 3) throw std::invalid_argument("config: overrides look like override.<solver>.<param>");
      auto solver = solver_from_string(parts[1]);
      auto param = param_from_string(parts[2]);
      if (!solver || !param) throw std::invalid_argument("config: unknown override " + key);
      cfg.overrides[*solver][*param] = to_double(key, value);
    } else {
      throw std::invalid_argument("config line " + std::to_string(number) + ": unknown key " + key);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return read_config(in);
}

std::uint64_t cell_seed(std::uint64_t master, const std::string& instance, const std::string& method,
                        std::size_t run) {
  std::uint64_t h = hash_combine(splitmix64(master), hash_string(instance));
  h = hash_combine(h, hash_string(method));
  return hash_combine(h, static_cast<std::uint64_t>(run));
}

std::string instance_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

namespace {

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "instance,method,run,seed,objective,time_to_best,evaluations,status\n" << std::setprecision(12);
  for (const auto& r : rows) {
    out << r.instance << ',' << r.method << ',' << r.run << ',' << r.seed << ',' << r.objective << ','
        << r.time_to_best << ',' << r.evaluations << ',' << csv_safe(r.status) << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("results CSV is empty");
  std::vector<ResultRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw std::invalid_argument("results CSV line " + std::to_string(number) + ": expected 8 fields");
    ResultRow r;
    r.instance = f[0];
    r.method = f[1];
    r.run = to_count("run", f[2]);
    r.seed = std::stoull(f[3]);
    r.objective = f[4] == "inf" ? kInfinity : to_double("objective", f[4]);
    r.time_to_best = to_double("time_to_best", f[5]);
    r.evaluations = to_count("evaluations", f[6]);
    r.status = f[7];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::map<std::string, double> read_bks(std::istream& in) {
  std::map<std::string, double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string name;
    double value = 0.0;
    if (!(words >> name)) continue;
    if (!(words >> value)) throw std::invalid_argument("BKS line for " + name + " has no value");
    out[name] = value;
  }
  return out;
}

std::map<std::string, double> load_bks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open BKS file " + path);
  return read_bks(in);
}

std::map<std::string, double> reference_values(const std::vector<ResultRow>& rows,
                                               const std::map<std::string, double>& bks) {
  std::map<std::string, double> ref;
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    auto [it, inserted] = ref.emplace(r.instance, r.objective);
    if (!inserted) it->second = std::min(it->second, r.objective);
  }
  for (const auto& [name, value] : bks) {
    if (ref.count(name)) ref[name] = value;
  }
  return ref;
}

double gap(double value, double reference) {
  if (reference > 0.0) return rpd(value, reference);
  return value - reference;
}

bool matches(double value, double reference) {
  return std::fabs(value - reference) <= 1e-9 * std::max(1.0, std::fabs(reference));
}

namespace {

/// Successful rows grouped by (instance, method), in first-seen order.
std::vector<std::pair<std::pair<std::string, std::string>, std::vector<const ResultRow*>>> group(
    const std::vector<ResultRow>& rows) {
  std::vector<std::pair<std::pair<std::string, std::string>, std::vector<const ResultRow*>>> out;
  std::map<std::pair<std::string, std::string>, std::size_t> where;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.instance, r.method);
    auto it = where.find(key);
    if (it == where.end()) {
      it = where.emplace(key, out.size()).first;
      out.push_back({key, {}});
    }
    if (r.ok()) out[it->second].second.push_back(&r);
  }
  return out;
}

template <typename T>
std::vector<T> first_seen(const std::vector<ResultRow>& rows, T ResultRow::*field) {
  std::vector<T> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.*field) == out.end()) out.push_back(r.*field);
  }
  return out;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows, const std::map<std::string, double>& bks) {
  const auto ref = reference_values(rows, bks);
  std::vector<SummaryRow> out;
  for (const auto& [key, members] : group(rows)) {
    SummaryRow s;
    s.instance = key.first;
    s.method = key.second;
    s.runs = members.size();
    if (members.empty()) {
      s.rpd_best = s.rpd_avg = std::nan("");
      out.push_back(s);
      continue;
    }
    double time_sum = 0.0;
    double rpd_sum = 0.0;
    for (const auto* r : members) {
      s.best = std::min(s.best, r->objective);
      time_sum += r->time_to_best;
    }
    s.mean_time_to_best = time_sum / static_cast<double>(members.size());
    const double reference = ref.at(s.instance);
    if (reference > 0.0) {
      for (const auto* r : members) rpd_sum += rpd(r->objective, reference);
      s.rpd_best = rpd(s.best, reference);
      s.rpd_avg = rpd_sum / static_cast<double>(members.size());
    } else {
      s.rpd_best = s.rpd_avg = std::nan("");
    }
    auto b = bks.find(s.instance);
    s.reaches_bks = b != bks.end() && matches(s.best, b->second);
    out.push_back(s);
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "instance,method,runs,best,rpd_best,rpd_avg,mean_time_to_best,bks\n" << std::setprecision(12);
  for (const auto& s : summary) {
    out << s.instance << ',' << s.method << ',' << s.runs << ',' << s.best << ',' << s.rpd_best << ','
        << s.rpd_avg << ',' << s.mean_time_to_best << ',' << (s.reaches_bks ? 1 : 0) << '\n';
  }
}

void write_method_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "method,instances,mean_rpd_best,mean_rpd_avg,mean_time_to_best,bks_count\n" << std::setprecision(12);
  std::vector<std::string> methods;
  for (const auto& s : summary) {
    if (std::find(methods.begin(), methods.end(), s.method) == methods.end()) methods.push_back(s.method);
  }
  for (const auto& m : methods) {
    std::size_t count = 0, rpd_count = 0, hits = 0;
    double rb = 0.0, ra = 0.0, t = 0.0;
    for (const auto& s : summary) {
      if (s.method != m) continue;
      ++count;
      t += s.mean_time_to_best;
      hits += s.reaches_bks ? 1 : 0;
      if (!std::isnan(s.rpd_best)) {
        ++rpd_count;
        rb += s.rpd_best;
        ra += s.rpd_avg;
      }
    }
    const double nan = std::nan("");
    out << m << ',' << count << ',' << (rpd_count ? rb / static_cast<double>(rpd_count) : nan) << ','
        << (rpd_count ? ra / static_cast<double>(rpd_count) : nan) << ',' << t / static_cast<double>(count) << ','
        << hits << '\n';
  }
}

PerformanceProfile profile_from_results(const std::vector<ResultRow>& rows,
                                        const std::map<std::string, double>& bks, double tolerance) {
  const auto ref = reference_values(rows, bks);
  const auto instances = first_seen(rows, &ResultRow::instance);
  const auto methods = first_seen(rows, &ResultRow::method);
  std::vector<std::vector<double>> times(instances.size(), std::vector<double>(methods.size(), kInfinity));
  std::vector<std::vector<double>> gaps(instances.size(), std::vector<double>(methods.size(), kInfinity));
  for (const auto& s : summarize(rows, bks)) {
    if (s.runs == 0) continue;
    const auto i = static_cast<std::size_t>(std::find(instances.begin(), instances.end(), s.instance) - instances.begin());
    const auto h = static_cast<std::size_t>(std::find(methods.begin(), methods.end(), s.method) - methods.begin());
    times[i][h] = s.mean_time_to_best;
    gaps[i][h] = gap(s.best, ref.at(s.instance));
  }
  return performance_profile(methods, times, gaps, tolerance);
}

void write_wilcoxon_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                        const std::map<std::string, double>& bks) {
  const auto ref = reference_values(rows, bks);
  const auto methods = first_seen(rows, &ResultRow::method);
  std::map<std::string, std::map<std::pair<std::string, std::size_t>, double>> by_method;
  for (const auto& r : rows) {
    if (r.ok()) by_method[r.method][{r.instance, r.run}] = gap(r.objective, ref.at(r.instance));
  }
  out << "method";
  for (const auto& m : methods) out << ',' << m;
  out << '\n' << std::setprecision(12);
  for (const auto& row : methods) {
    out << row;
    for (const auto& col : methods) {
      out << ',';
      if (row == col) continue;
      std::vector<double> x, y;
      for (const auto& [cell, value] : by_method[row]) {
        auto it = by_method[col].find(cell);
        if (it == by_method[col].end()) continue;
        x.push_back(value);
        y.push_back(it->second);
      }
      if (x.size() >= kMinWilcoxonPairs) out << wilcoxon_one_sided(x, y).p_value;
    }
    out << '\n';
  }
}

SolverParams configured_params(const ExperimentConfig& config, SolverKind kind) {
  SolverParams p = table_params(config.problem, kind);
  if (auto it = config.overrides.find(kind); it != config.overrides.end()) {
    for (const auto& [id, value] : it->second) p.at(id) = value;
  }
  p.validate(kind);
  return p;
}

namespace {

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  body(out);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::optional<problems::LoadedProblem>> loaded(config.instances.size());
  std::vector<std::string> load_errors(config.instances.size());
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    try {
      loaded[i] = problems::load_problem(config.problem, config.instances[i], {config.alpha});
    } catch (const std::exception& e) {
      load_errors[i] = e.what();
    }
  }

  struct Cell {
    std::size_t instance;
    std::string method;
    std::size_t run;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    for (const auto& m : config.methods) {
      for (std::size_t r = 0; r < config.runs; ++r) cells.push_back({i, m, r});
    }
  }

  ExperimentReport report;
  report.rows.resize(cells.size());
  auto run_cell = [&](std::size_t c) {
    const Cell& cell = cells[c];
    ResultRow& row = report.rows[c];
    row.instance = instance_name(config.instances[cell.instance]);
    row.method = cell.method;
    row.run = cell.run;
    row.seed = cell_seed(config.seed, row.instance, row.method, row.run);
    if (!loaded[cell.instance]) {
      row.status = "failed: " + load_errors[cell.instance];
      return;
    }
    try {
      const auto& problem = *loaded[cell.instance];
      PortfolioConfig pc;
      if (cell.method == kPortfolioMethod) {
        pc.solvers.assign(kAllSolvers.begin(), kAllSolvers.end());
      } else {
        pc.solvers = {*solver_from_string(cell.method)};
      }
      for (auto k : pc.solvers) pc.params.push_back(configured_params(config, k));
      pc.q_learning = config.q_learning;
      pc.seed = row.seed;
      pc.stop.time_limit = config.time_limit.value_or(problems::default_time_limit(config.problem, problem.size));
      pc.stop.max_evaluations = config.max_evaluations;
      pc.workers = config.portfolio_workers;
      const auto result = run_portfolio(*problem.decoder, pc);
      row.objective = result.best.best.objective;
      row.time_to_best = result.best.time_to_best;
      row.evaluations = result.pool_init.evaluations;
      for (const auto& r : result.per_solver) row.evaluations += r.evaluations;
    } catch (const std::exception& e) {
      row.status = std::string("failed: ") + e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) run_cell(c);
  };
  if (config.workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < config.workers; ++t) threads.emplace_back(worker);
  }
  for (const auto& r : report.rows) report.failed += r.ok() ? 0 : 1;

  std::map<std::string, double> bks;
  if (!config.bks_path.empty()) bks = load_bks(config.bks_path);
  const std::filesystem::path dir(config.output);
  std::filesystem::create_directories(dir);
  write_file(dir / "results.csv", [&](std::ostream& o) { write_results_csv(o, report.rows); });
  const auto summary = summarize(report.rows, bks);
  write_file(dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, summary); });
  write_file(dir / "methods.csv", [&](std::ostream& o) { write_method_summary_csv(o, summary); });
  const bool any_ok = std::any_of(report.rows.begin(), report.rows.end(), [](const ResultRow& r) { return r.ok(); });
  if (any_ok) {
    write_file(dir / "profile.csv",
               [&](std::ostream& o) { write_profile_csv(o, profile_from_results(report.rows, bks, config.tolerance)); });
    write_file(dir / "wilcoxon.csv", [&](std::ostream& o) { write_wilcoxon_csv(o, report.rows, bks); });
  }
  return report;
}

}  // namespace rko::harness
