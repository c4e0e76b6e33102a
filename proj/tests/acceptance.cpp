// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
// Usage: rko_acceptance <path-to-rko-cli>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rko/harness/metrics.hpp"
#include "rko/local_search.hpp"
#include "rko/param_control.hpp"
#include "rko/problems/ncgpp.hpp"
#include "rko/problems/pmedian.hpp"
#include "rko/problems/thlp.hpp"
#include "rko/problems/tsp.hpp"
#include "rko/solvers.hpp"
#include "rko/variation.hpp"
#include "support.hpp"

using namespace rko;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = seconds_since(start);
  if (!out.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

bool near(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

Outcome worked_decoders() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<double> tour_keys{0.085, 0.277, 0.149, 0.332, 0.148};
  o.require(problems::decode_tour(tour_keys) == std::vector<std::size_t>{0, 4, 2, 1, 3}, "tour");

  const std::vector<double> facility_keys{0.45, 0.74, 0.12};
  o.require(problems::decode_facilities(facility_keys, 10) == std::vector<std::size_t>{4, 7, 0},
            "facilities");

  const auto inst = rko::testing::worked_example_ncgpp();
  const std::vector<double> keys{0.6, 0.1, 0.4, 0.2, 0.3, 0.5, 0.7};
  const auto part = problems::decode_partition(inst, keys);
  o.require(part.controller == std::vector<int>{0, 0, 0, 1, 1, 1}, "partition");
  o.require(problems::NcgppDecoder(inst).describe(keys) == "RNC1: 2 3 1 | RNC2: 4 5 6", "partition text");
  o.require(seconds_since(start) < 1.0, "slower than 1 s");
  return o;
}

Outcome farey_constant() {
  Outcome o;
  const std::array<double, 19> displayed{0.0,       1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 2.0 / 7, 1.0 / 3,
                                         2.0 / 5,   3.0 / 7, 1.0 / 2, 4.0 / 7, 3.0 / 5, 2.0 / 3, 5.0 / 7,
                                         3.0 / 4,   4.0 / 5, 5.0 / 6, 6.0 / 7, 1.0};
  for (std::size_t i = 0; i < displayed.size(); ++i) {
    o.require(kFarey[i] == displayed[i], "fraction " + std::to_string(i));
  }
  return o;
}

Outcome descent_suite() {
  Outcome o;
  RngStream gen(101, 0);
  const auto decoders = rko::testing::small_decoders(gen);
  std::size_t violations = 0;
  for (const auto& nd : decoders) {
    const auto& dec = *nd.decoder;
    const std::size_t n = dec.dimension();
    ElitePool pool(20);
    SearchContext ctx(dec, &pool, RngStream(102, 0), StopCriterion{3600.0, 0, std::nullopt}, Clock::now());
    RngStream rng(103, 0);
    for (int rep = 0; rep < 1000; ++rep) {
      Solution s{random_vector(n, rng), {}};
      s.fitness = dec.decode(s.keys);
      Solution a{random_vector(n, rng), {}};
      a.fitness = dec.decode(a.keys);
      Solution b{random_vector(n, rng), {}};
      b.fitness = dec.decode(b.keys);
      const double f = s.fitness.objective;
      const std::array<Solution, 5> outs{swap_ls(s, ctx), farey_ls(s, ctx), mirror_ls(s, ctx),
                                         nelder_mead_ls(s, a, b, ctx), rvnd(s, ctx)};
      for (const auto& r : outs) {
        if (!(r.fitness.objective <= f) || r.fitness.objective != dec.decode(r.keys).objective) {
          ++violations;
        }
      }
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  return o;
}

Outcome closure_fuzz() {
  Outcome o;
  const std::size_t trials = 100000;
  std::size_t violations = 0;
  auto all_valid = [](const KeyVector& k) { return std::all_of(k.begin(), k.end(), valid_key); };
  RngStream rng(201, 0);

  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 1 + rng.index(40);
    const double lo = rng.uniform();
    const ShakeParams sp{lo, rng.uniform(lo, 1.0)};
    violations += all_valid(shake(random_vector(n, rng), sp, rng)) ? 0 : 1;
    const BlendParams bp{rng.uniform(), rng.uniform(), rng.uniform() < 0.5 ? 1 : -1};
    violations += all_valid(blend(random_vector(n, rng), random_vector(n, rng), bp, rng)) ? 0 : 1;
  }

  SolverParams pso = table_params(ProblemKind::ANpMP, SolverKind::PSO);
  for (std::size_t t = 0; t < trials; t += 100) {
    const std::size_t n = 1 + rng.index(40);
    KeyVector x = random_vector(n, rng);
    std::vector<double> v(n);
    for (auto& vi : v) vi = rng.uniform(-2.0, 2.0);
    const KeyVector pb = random_vector(n, rng);
    const KeyVector gb = random_vector(n, rng);
    for (int s = 0; s < 100; ++s) {
      pso_move(x, v, pb, gb, pso, rng);
      violations += all_valid(x) ? 0 : 1;
    }
  }

  RngStream gen(202, 0);
  problems::PMedianDecoder dec(rko::testing::random_pmedian(gen, 12, 4, 2));
  SearchContext ctx(dec, nullptr, RngStream(203, 0), StopCriterion{3600.0, 0, std::nullopt}, Clock::now());
  ctx.set_offer_to_pool(false);
  for (std::size_t t = 0; t < trials; ++t) {
    Solution s{random_vector(dec.dimension(), rng), {}};
    s.fitness = dec.decode(s.keys);
    violations += all_valid(lns_destroy_repair(s, 0.1, 0.3, ctx).keys) ? 0 : 1;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  return o;
}

Outcome pool_invariants() {
  Outcome o;
  ElitePool pool(20);
  RngStream rng(301, 0);
  std::size_t violations = 0;
  for (int op = 0; op < 10000; ++op) {
    if (rng.uniform() < 0.7) {
      const double z = std::round(rng.uniform(0.0, 200.0)) + (rng.uniform() < 0.2 ? 1e-13 : 0.0);
      pool.offer(random_vector(5, rng), Fitness::of(z));
    } else if (pool.size() > 0) {
      pool.sample(rng);
    }
    const auto snap = pool.snapshot();
    if (snap.size() > pool.capacity()) ++violations;
    for (std::size_t i = 1; i < snap.size(); ++i) {
      if (snap[i - 1].fitness.objective > snap[i].fitness.objective) ++violations;
    }
    for (std::size_t i = 0; i < snap.size(); ++i) {
      for (std::size_t j = i + 1; j < snap.size(); ++j) {
        const double a = snap[i].fitness.objective, b = snap[j].fitness.objective;
        if (a == b || std::fabs(a - b) <= 1e-9 * std::max(std::fabs(a), std::fabs(b))) ++violations;
      }
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  return o;
}

struct TinyInstance {
  ProblemKind kind;
  std::shared_ptr<const Decoder> decoder;
  double optimum;
};

std::vector<TinyInstance> tiny_instances() {
  std::vector<TinyInstance> out;
  RngStream rng(601, 0);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 6 + rng.index(7);
    const std::size_t p = 2 + rng.index(3);
    const std::size_t alpha = 1 + rng.index(2);
    const auto inst = rko::testing::random_pmedian(rng, n, p, alpha);
    out.push_back({ProblemKind::ANpMP, std::make_shared<problems::PMedianDecoder>(inst),
                   problems::brute_force(inst).objective});
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t stations = 5 + rng.index(5);
    const std::size_t controllers = 2 + rng.index(2);
    const auto inst = rko::testing::random_ncgpp(rng, stations, controllers);
    out.push_back({ProblemKind::NCGPP, std::make_shared<problems::NcgppDecoder>(inst),
                   problems::brute_force(inst).objective});
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 5 + rng.index(3);
    const auto inst = rko::testing::random_thlp(rng, n, 3);
    out.push_back({ProblemKind::THLP, std::make_shared<problems::ThlpDecoder>(inst),
                   problems::brute_force(inst).objective});
  }
  return out;
}

PortfolioResult run_cell(const TinyInstance& t, std::uint64_t seed, std::vector<SolverKind> solvers) {
  auto cfg = default_portfolio(t.kind, std::move(solvers));
  cfg.seed = seed;
  cfg.stop = StopCriterion{2.0, 0, t.optimum};
  return run_portfolio(*t.decoder, cfg);
}

bool solved(double value, double optimum) {
  return value <= optimum + 1e-9 * std::max(1.0, std::fabs(optimum));
}

struct CellRecord {
  std::size_t instance;
  std::uint64_t seed;
  double portfolio;
};

std::vector<TinyInstance> instances;
std::vector<CellRecord> cells;

Outcome oracle_equivalence() {
  Outcome o;
  instances = tiny_instances();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto r = run_cell(instances[i], seed, {kAllSolvers.begin(), kAllSolvers.end()});
      cells.push_back({i, seed, r.best.best.objective});
      hits += solved(r.best.best.objective, instances[i].optimum) ? 1 : 0;
    }
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(cells.size());
  o.detail = std::to_string(hits) + "/" + std::to_string(cells.size()) + " cells at the optimum";
  o.require(rate >= 0.95, o.detail);
  return o;
}

Outcome metropolis_statistics() {
  Outcome o;
  RngStream rng(701, 0);
  for (double temperature : {0.5, 1.0, 10.0}) {
    for (double delta : {0.1, 1.0, 3.0}) {
      int accepted = 0;
      for (int t = 0; t < 10000; ++t) accepted += metropolis_accept(delta, temperature, rng) ? 1 : 0;
      o.require(std::fabs(accepted / 10000.0 - std::exp(-delta / temperature)) <= 0.05,
                "T=" + std::to_string(temperature) + " delta=" + std::to_string(delta));
    }
  }
  int improving = 0;
  for (int t = 0; t < 10000; ++t) improving += metropolis_accept(-rng.uniform(), 1.0, rng) ? 1 : 0;
  o.require(improving == 10000, "improving move rejected");
  return o;
}

Outcome q_learning_checks() {
  Outcome o;
  o.require(epsilon(0.0, 0.1, 1) == 1.0, "eps(0)");
  for (int i = 1; i <= 10; ++i) o.require(near(epsilon(0.1, 0.1, i), 0.1), "eps(T)");
  o.require(near(epsilon(0.05, 0.1, 1), 0.55), "eps(T/2)");
  o.require(reward(100, 90) == 1.0, "reward improving");
  o.require(near(reward(100, 125), -0.2), "reward worsening");

  const ParameterGrid grid({ParamId::BetaMin, ParamId::BetaMax}, {{0.1, 0.2}, {0.3, 0.4}});
  QTable q(grid);
  const ParameterGrid::Action a{0, 1};
  q.set(0, a, 2.0);
  q.set(1, ParameterGrid::Action{0, 0}, 2.0);
  o.require(q.max_q(1) == 2.0, "max next");
  o.require(update_q(q, 0, a, 1.0, 1, 0.5, 0.8) == 2.3, "Bellman update");
  o.require(q.get(0, a) == 2.3, "stored update");
  return o;
}

Outcome metric_checks() {
  Outcome o;
  o.require(harness::rpd(103, 100) == 3.0, "rpd");

  const std::vector<std::vector<double>> times{{1, 2, 4}, {3, 3, 1.5}, {2, 1, 7}, {5, 10, 5}};
  const std::vector<std::vector<double>> gaps{{0, 0, 0}, {0, 0, 0}, {0, 0, 2}, {1, 0, 0}};
  const auto prof = harness::performance_profile({"A", "B", "C"}, times, gaps, 0.5);
  const std::vector<std::vector<std::pair<double, double>>> expected{
      {{1.0, 0.25}, {2.0, 0.75}}, {{1.0, 0.25}, {2.0, 1.0}}, {{1.0, 0.5}, {4.0, 0.75}}};
  for (std::size_t h = 0; h < 3; ++h) {
    o.require(prof.curves[h].steps == expected[h], "profile curve " + prof.curves[h].method);
  }

  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(i + 1.0 + 0.1 * i);
  }
  o.require(near(harness::wilcoxon_one_sided(x, y).p_value, 1.0 / 1024.0), "Wilcoxon exact tail");

  RngStream rng(901, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t ni = 1 + rng.index(10), nh = 1 + rng.index(5);
    std::vector<std::string> methods;
    for (std::size_t h = 0; h < nh; ++h) methods.push_back("m" + std::to_string(h));
    std::vector<std::vector<double>> t(ni, std::vector<double>(nh)), g = t;
    for (std::size_t i = 0; i < ni; ++i) {
      for (std::size_t h = 0; h < nh; ++h) {
        t[i][h] = rng.uniform(0.0, 100.0);
        g[i][h] = rng.uniform() < 0.3 ? 10.0 : 0.0;
      }
    }
    for (const auto& c : harness::performance_profile(methods, t, g, 1.0).curves) {
      double prev = 0.0;
      for (double tau = 1.0; tau < 1e4; tau *= 1.3) {
        const double r = c.rho(tau);
        o.require(r >= prev && r <= 1.0, "profile monotonicity");
        prev = r;
      }
    }
  }
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reproducibility(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.require(false, "CLI path not given");
    return o;
  }
  RngStream rng(1001, 0);
  std::ostringstream text;
  problems::write_thlp(text, rko::testing::random_thlp(rng, 10, 3));
  const auto instance = rko::testing::write_temp("repro.thlp", text.str());
  const auto dir = std::filesystem::path(instance).parent_path();
  std::string csv[2];
  for (int rep = 0; rep < 2; ++rep) {
    const auto out = (dir / ("repro" + std::to_string(rep) + ".csv")).string();
    std::filesystem::remove(out);
    const std::string cmd = "\"" + cli + "\" solve --problem thlp --instance \"" + instance +
                            "\" --seed 42 --workers 1 --max-evals 3000 --time-limit 600 --csv \"" + out +
                            "\" > /dev/null";
    o.require(std::system(cmd.c_str()) == 0, "solve exited nonzero");
    csv[rep] = slurp(out);
  }
  o.require(!csv[0].empty(), "empty CSV");
  o.require(csv[0] == csv[1], "CSV files differ");
  return o;
}

Outcome portfolio_dominance() {
  Outcome o;
  if (cells.empty()) {
    o.require(false, "criterion 6 produced no cells");
    return o;
  }
  // A portfolio cell at the optimum cannot be beaten; only missed cells need
  // the individual solvers.
  std::size_t compared = 0;
  for (const auto& c : cells) {
    const auto& t = instances[c.instance];
    if (solved(c.portfolio, t.optimum)) continue;
    for (auto kind : kAllSolvers) {
      const auto single = run_cell(t, c.seed, {kind});
      ++compared;
      o.require(c.portfolio <= single.best.best.objective,
                std::string(to_string(kind)) + " beats the portfolio on instance " +
                    std::to_string(c.instance) + " seed " + std::to_string(c.seed));
    }
  }
  o.detail = o.pass ? std::to_string(compared) + " solver runs compared on missed cells" : o.detail;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  report(1, "worked-example decoders", worked_decoders);
  report(2, "Farey constant", farey_constant);
  report(3, "local-search descent", descent_suite);
  report(4, "operator closure fuzz", closure_fuzz);
  report(5, "elite pool invariants", pool_invariants);
  report(6, "oracle equivalence on tiny instances", oracle_equivalence);
  report(7, "Metropolis statistics", metropolis_statistics);
  report(8, "Q-Learning unit checks", q_learning_checks);
  report(9, "metric checks", metric_checks);
  report(10, "solve reproducibility", [&] { return reproducibility(cli); });
  report(11, "portfolio dominance", portfolio_dominance);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
