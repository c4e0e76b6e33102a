#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "rko/harness/experiment.hpp"
#include "support.hpp"

using namespace rko;
using namespace rko::harness;

namespace {

/// Exact one-sided p by recursive enumeration of sign patterns.
double enumerate_p(const std::vector<double>& x, const std::vector<double>& y, double* p_equal = nullptr) {
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) d.push_back(x[i] - y[i]);
  }
  std::vector<double> rank(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    double below = 0, same = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (std::fabs(d[j]) < std::fabs(d[i])) below += 1;
      if (std::fabs(d[j]) == std::fabs(d[i])) same += 1;
    }
    rank[i] = below + (same + 1) / 2;
  }
  double observed = 0;
  for (std::size_t i = 0; i < d.size(); ++i) observed += d[i] > 0 ? rank[i] : 0;
  double le = 0, eq = 0, total = 0;
  std::function<void(std::size_t, double)> walk = [&](std::size_t i, double w) {
    if (i == d.size()) {
      total += 1;
      le += w <= observed + 1e-9 ? 1 : 0;
      eq += std::fabs(w - observed) < 1e-9 ? 1 : 0;
      return;
    }
    walk(i + 1, w);
    walk(i + 1, w + rank[i]);
  };
  walk(0, 0);
  if (p_equal) *p_equal = eq / total;
  return le / total;
}

}  // namespace

TEST_CASE("relative percentage deviation") {
  CHECK(rpd(100.0, 100.0) == 0.0);
  CHECK(rpd(103.0, 100.0) == doctest::Approx(3.0));
  CHECK(rpd(50.0, 100.0) == doctest::Approx(-50.0));
  CHECK_THROWS_AS(rpd(1.0, 0.0), UndefinedBaselineError);
  CHECK_THROWS_AS(rpd(1.0, -3.0), UndefinedBaselineError);
}

TEST_CASE("performance profile of a hand-computed table") {
  const double inf = kInfinity;
  const std::vector<std::string> methods{"A", "B", "C"};
  const std::vector<std::vector<double>> times{{1, 2, 4}, {3, 3, 1.5}, {2, 1, 7}, {5, 10, 5}};
  const std::vector<std::vector<double>> gaps{{0, 0, 0}, {0, 0, 0}, {0, 0, 2}, {1, 0, 0}};
  const auto prof = performance_profile(methods, times, gaps, 0.5);
  CHECK(prof.ratios[2][2] == inf);
  CHECK(prof.ratios[3][0] == inf);
  CHECK(prof.ratios[3][1] == 2.0);
  const auto& a = prof.curves[0];
  const auto& b = prof.curves[1];
  const auto& c = prof.curves[2];
  CHECK(a.rho(1.0) == 0.25);
  CHECK(a.rho(2.0) == 0.75);
  CHECK(a.rho(100.0) == 0.75);
  CHECK(b.rho(1.0) == 0.25);
  CHECK(b.rho(1.99) == 0.25);
  CHECK(b.rho(2.0) == 1.0);
  CHECK(c.rho(1.0) == 0.5);
  CHECK(c.rho(3.9) == 0.5);
  CHECK(c.rho(4.0) == 0.75);
  CHECK(a.rho(1.0) + b.rho(1.0) + c.rho(1.0) >= 1.0);
  std::ostringstream csv;
  write_profile_csv(csv, prof);
  CHECK(csv.str().rfind("method,log2_tau,rho\nA,0,0.25\nA,1,0.75\n", 0) == 0);
}

TEST_CASE("profile edge cases") {
  const auto single = performance_profile({"A"}, {{2.0}, {3.0}}, {{0.0}, {0.0}}, 0.0);
  CHECK(single.curves[0].rho(1.0) == 1.0);
  const auto two = performance_profile({"A", "B"}, {{1.0, 2.0}, {1.0, 5.0}}, {{0, 0}, {0, 0}}, 0.0);
  CHECK(two.curves[0].rho(1.0) == 1.0);
  CHECK(two.curves[1].rho(1.0) == 0.0);
  const auto missed = performance_profile({"A", "B"}, {{1.0, 2.0}}, {{5, 0}}, 0.0);
  CHECK(missed.curves[0].steps.empty());
  CHECK(missed.curves[0].rho(1e9) == 0.0);
}

TEST_CASE("profile curves are monotone on random tables") {
  RngStream rng(1, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t ni = 1 + rng.index(8), nh = 2 + rng.index(4);
    std::vector<std::string> methods;
    for (std::size_t h = 0; h < nh; ++h) methods.push_back("m" + std::to_string(h));
    std::vector<std::vector<double>> t(ni, std::vector<double>(nh)), g = t;
    for (std::size_t i = 0; i < ni; ++i) {
      for (std::size_t h = 0; h < nh; ++h) {
        t[i][h] = rng.uniform(0.0, 10.0);
        g[i][h] = rng.uniform() < 0.3 ? 5.0 : 0.0;
      }
    }
    const auto prof = performance_profile(methods, t, g, 1.0);
    double sum_at_one = 0.0;
    bool all_solved = true;
    for (std::size_t i = 0; i < ni; ++i) {
      bool solved = false;
      for (std::size_t h = 0; h < nh; ++h) solved = solved || g[i][h] <= 1.0;
      all_solved = all_solved && solved;
    }
    for (const auto& c : prof.curves) {
      double prev = 0.0;
      for (const auto& [tau, rho] : c.steps) {
        CHECK(tau >= 1.0);
        CHECK(rho >= prev);
        CHECK(rho <= 1.0);
        prev = rho;
      }
      sum_at_one += c.rho(1.0);
    }
    if (all_solved) CHECK(sum_at_one >= 1.0 - 1e-12);
  }
}

TEST_CASE("Wilcoxon exact tail for uniform signs") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(i + 1 + 0.1 * i);
  }
  const auto r = wilcoxon_one_sided(x, y);
  CHECK(r.exact);
  CHECK(r.p_value == doctest::Approx(1.0 / 1024.0));
  CHECK(wilcoxon_one_sided(y, x).p_value == 1.0);
}

TEST_CASE("Wilcoxon matches exhaustive enumeration") {
  const std::vector<double> x{1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06};
  const std::vector<double> y{0.878, 0.647, 0.598, 2.05, 1.06, 1.29, 1.06, 3.14};
  CHECK(wilcoxon_one_sided(x, y).p_value == doctest::Approx(enumerate_p(x, y)));
  CHECK(wilcoxon_one_sided(y, x).p_value == doctest::Approx(enumerate_p(y, x)));
  // Tied magnitudes and a zero difference.
  const std::vector<double> u{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<double> v{2, 1, 5, 4, 3, 8, 9, 7, 8};
  CHECK(wilcoxon_one_sided(u, v).effective_n == 8);
  CHECK(wilcoxon_one_sided(u, v).p_value == doctest::Approx(enumerate_p(u, v)));
}

TEST_CASE("Wilcoxon complement relation on tie-free data") {
  RngStream rng(2, 0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x, y;
    for (int i = 0; i < 9; ++i) {
      x.push_back(rng.uniform());
      y.push_back(rng.uniform());
    }
    double p_equal = 0.0;
    enumerate_p(x, y, &p_equal);
    const double forward = wilcoxon_one_sided(x, y).p_value;
    const double backward = wilcoxon_one_sided(y, x).p_value;
    CHECK(forward > 0.0);
    CHECK(forward <= 1.0);
    CHECK(forward + backward == doctest::Approx(1.0 + p_equal));
  }
}

TEST_CASE("Wilcoxon degenerate and approximate regimes") {
  const std::vector<double> same{1, 2, 3, 4, 5};
  const auto d = wilcoxon_one_sided(same, same);
  CHECK(d.degenerate);
  CHECK(d.p_value == 1.0);
  CHECK_THROWS(wilcoxon_one_sided({1, 2, 3, 4}, {2, 3, 4, 5}));
  CHECK_THROWS(wilcoxon_one_sided({1, 2, 3, 4, 5}, {2, 3, 4, 5}));

  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(0.0);
    y.push_back(1.0 + i);
  }
  const auto r = wilcoxon_one_sided(x, y);
  CHECK_FALSE(r.exact);
  const double z = (0.0 - 105.0 + 0.5) / std::sqrt(20.0 * 21.0 * 41.0 / 24.0);
  CHECK(r.p_value == doctest::Approx(0.5 * std::erfc(-z / std::sqrt(2.0))));
}

TEST_CASE("average ranks") {
  CHECK(average_ranks({3.0, 1.0, 3.0, 2.0}) == std::vector<double>{3.5, 1.0, 3.5, 2.0});
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# sample\nproblem = ncgpp\ninstances = a.txt, b.txt\nmethods = portfolio, sa\nruns = 3\n"
      "time_limit = 2.5\nseed = 9\nparams = qlearning\noverride.sa.T0 = 500\nworkers = 2\n");
  const auto cfg = read_config(in);
  CHECK(cfg.problem == ProblemKind::NCGPP);
  CHECK(cfg.instances == std::vector<std::string>{"a.txt", "b.txt"});
  CHECK(cfg.methods == std::vector<std::string>{"portfolio", "sa"});
  CHECK(cfg.runs == 3);
  CHECK(*cfg.time_limit == 2.5);
  CHECK(cfg.seed == 9);
  CHECK(cfg.q_learning);
  CHECK(cfg.workers == 2);
  CHECK(configured_params(cfg, SolverKind::SA).initial_temp == 500.0);
  CHECK(configured_params(cfg, SolverKind::SA).iterations_per_temp == 1000.0);

  std::istringstream bad1("problem = nope\ninstances = a\n");
  CHECK_THROWS(read_config(bad1));
  std::istringstream bad2("instances = a\nruns = 0\n");
  CHECK_THROWS(read_config(bad2));
  std::istringstream bad3("instances = a\ncolour = blue\n");
  CHECK_THROWS(read_config(bad3));
  std::istringstream bad4("instances = a\nmethods = tabu\n");
  CHECK_THROWS(read_config(bad4));
}

TEST_CASE("cell seeds are stable and distinct") {
  CHECK(cell_seed(1, "a", "sa", 0) == cell_seed(1, "a", "sa", 0));
  std::set<std::uint64_t> seen;
  for (const char* inst : {"a", "b"}) {
    for (const char* m : {"sa", "ils"}) {
      for (std::size_t r = 0; r < 5; ++r) seen.insert(cell_seed(1, inst, m, r));
    }
  }
  CHECK(seen.size() == 20);
  CHECK(cell_seed(1, "a", "sa", 0) != cell_seed(2, "a", "sa", 0));
  CHECK(instance_name("/x/y/pmed1.txt") == "pmed1.txt");
}

TEST_CASE("results CSV round trip") {
  std::vector<ResultRow> rows{{"i1", "sa", 0, 17, 12.5, 0.25, 100, "ok"},
                              {"i1", "sa", 1, 18, kInfinity, 0.0, 0, "failed: x, y"}};
  std::ostringstream out;
  write_results_csv(out, rows);
  std::istringstream in(out.str());
  const auto back = read_results_csv(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].objective == 12.5);
  CHECK(back[0].seed == 17);
  CHECK(back[1].objective == kInfinity);
  CHECK(back[1].status == "failed: x; y");
  CHECK_FALSE(back[1].ok());
}

TEST_CASE("summary statistics") {
  std::vector<ResultRow> rows;
  for (double z : {103.0, 101.0, 110.0}) rows.push_back({"i", "m", rows.size(), 0, z, 1.0, 5, "ok"});
  std::map<std::string, double> bks{{"i", 100.0}};
  const auto s = summarize(rows, bks);
  REQUIRE(s.size() == 1);
  CHECK(s[0].best == 101.0);
  CHECK(s[0].rpd_best == doctest::Approx(1.0));
  CHECK(s[0].rpd_avg == doctest::Approx(14.0 / 3.0));
  CHECK(s[0].rpd_avg >= s[0].rpd_best);
  CHECK_FALSE(s[0].reaches_bks);
  bks["i"] = 101.0;
  CHECK(summarize(rows, bks)[0].reaches_bks);
}

TEST_CASE("one-cell experiment writes every report") {
  RngStream rng(3, 0);
  const auto inst = rko::testing::random_pmedian(rng, 10, 3, 2);
  std::ostringstream text;
  problems::write_pmed(text, inst);
  const auto path = rko::testing::write_temp("one.pmed", text.str());
  ExperimentConfig cfg;
  cfg.problem = ProblemKind::ANpMP;
  cfg.instances = {path};
  cfg.methods = {"ils"};
  cfg.runs = 1;
  cfg.time_limit = 600.0;
  cfg.max_evaluations = 500;
  cfg.portfolio_workers = 1;
  cfg.output = (std::filesystem::temp_directory_path() / "rko_tests" / "one_cell").string();
  const auto report = run_experiment(cfg);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.failed == 0);
  for (const char* f : {"results.csv", "summary.csv", "methods.csv", "profile.csv", "wilcoxon.csv"}) {
    CHECK(std::filesystem::exists(std::filesystem::path(cfg.output) / f));
  }
  std::ifstream summary(std::filesystem::path(cfg.output) / "summary.csv");
  std::string line;
  int lines = 0;
  while (std::getline(summary, line)) ++lines;
  CHECK(lines == 2);
}

TEST_CASE("experiment reruns are identical and failed instances are recorded") {
  RngStream rng(4, 0);
  std::ostringstream text;
  problems::write_ncgpp(text, rko::testing::random_ncgpp(rng, 7, 2));
  const auto good = rko::testing::write_temp("det.ncgpp", text.str());
  const auto bad = rko::testing::write_temp("bad.ncgpp", "2 1\n1\n");
  ExperimentConfig cfg;
  cfg.problem = ProblemKind::NCGPP;
  cfg.instances = {good, bad};
  cfg.methods = {"portfolio", "vns"};
  cfg.runs = 2;
  cfg.time_limit = 600.0;
  cfg.max_evaluations = 400;
  cfg.portfolio_workers = 1;
  std::string csv[2];
  for (int rep = 0; rep < 2; ++rep) {
    cfg.output = (std::filesystem::temp_directory_path() / "rko_tests" / ("det" + std::to_string(rep))).string();
    const auto report = run_experiment(cfg);
    CHECK(report.failed == 4);
    // time_to_best is wall-clock; every other column must repeat.
    std::ostringstream ss;
    for (const auto& row : report.rows) {
      ss << row.instance << ',' << row.method << ',' << row.run << ',' << row.seed << ','
         << row.objective << ',' << row.evaluations << ',' << row.status << '\n';
    }
    csv[rep] = ss.str();
  }
  CHECK(csv[0] == csv[1]);
  CHECK(csv[0].find("failed") != std::string::npos);
}

TEST_CASE("BKS column counts instances solved to the oracle value") {
  RngStream rng(5, 0);
  std::vector<std::string> paths;
  std::ostringstream bks_text;
  std::map<std::string, double> optimum;
  for (int i = 0; i < 3; ++i) {
    const auto inst = rko::testing::random_pmedian(rng, 8, 2, 1);
    std::ostringstream text;
    problems::write_pmed(text, inst);
    const std::string name = "bks" + std::to_string(i) + ".pmed";
    paths.push_back(rko::testing::write_temp(name, text.str()));
    optimum[name] = problems::brute_force(problems::parse_orlib_pmed(paths.back(), 1)).objective;
    bks_text << name << ' ' << optimum[name] << '\n';
  }
  ExperimentConfig cfg;
  cfg.problem = ProblemKind::ANpMP;
  cfg.instances = paths;
  cfg.methods = {"sa", "ils"};
  cfg.runs = 5;
  cfg.alpha = 1;
  cfg.time_limit = 600.0;
  cfg.max_evaluations = 300;
  cfg.portfolio_workers = 1;
  cfg.bks_path = rko::testing::write_temp("oracle.bks", bks_text.str());
  cfg.output = (std::filesystem::temp_directory_path() / "rko_tests" / "bks").string();
  const auto report = run_experiment(cfg);
  const auto summary = summarize(report.rows, load_bks(cfg.bks_path));
  for (const auto& s : summary) {
    double best = kInfinity;
    for (const auto& r : report.rows) {
      if (r.instance == s.instance && r.method == s.method) best = std::min(best, r.objective);
    }
    CHECK(s.reaches_bks == (best == optimum[s.instance]));
  }
  std::ifstream methods(std::filesystem::path(cfg.output) / "methods.csv");
  std::string header;
  std::getline(methods, header);
  CHECK(header == "method,instances,mean_rpd_best,mean_rpd_avg,mean_time_to_best,bks_count");
}
