#include "rko/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <thread>

#include "rko/local_search.hpp"
#include "rko/variation.hpp"

namespace rko {

RunResult make_result(const SearchContext& ctx) {
  RunResult r;
  r.solver = ctx.name();
  if (ctx.has_best()) {
    r.best_keys = ctx.best().keys;
    r.best = ctx.best().fitness;
  }
  r.time_to_best = ctx.time_to_best();
  r.evaluations = ctx.evaluations();
  r.evaluations_to_best = ctx.evaluations_to_best();
  r.trace = ctx.trace();
  return r;
}

bool metropolis_accept(double delta, double temperature, RngStream& rng) {
  if (delta <= 0.0) return true;
  if (!(temperature > 0.0)) return false;
  return rng.uniform() < std::exp(-delta / temperature);
}

namespace {

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

bool better(const Solution& a, const Solution& b) { return a.fitness.objective < b.fitness.objective; }

void sort_population(std::vector<Solution>& pop) { std::stable_sort(pop.begin(), pop.end(), better); }

Solution random_solution(SearchContext& ctx) {
  Solution s;
  s.keys = random_vector(ctx.dimension(), ctx.rng());
  s.fitness = ctx.evaluate(s.keys);
  return s;
}

/// Evaluates up to `count` random solutions; the first is always created so
/// every solver has an initial solution even with an exhausted budget.
std::vector<Solution> random_population(std::size_t count, SearchContext& ctx) {
  std::vector<Solution> pop;
  pop.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && ctx.stopped()) break;
    pop.push_back(random_solution(ctx));
  }
  return pop;
}

/// Asks the controller for the next configuration, if there is one.
const SolverParams& next_params(QController* controller, const SolverParams& fixed,
                                double previous_best, double new_best, SearchContext& ctx) {
  if (controller == nullptr) return fixed;
  return controller->step(previous_best, new_best, ctx.progress(), ctx.rng());
}

void cool(double& temperature, const SolverParams& params) {
  temperature *= params.cooling_rate;
  if (temperature < kReheatThreshold) temperature = params.initial_temp;
}

}  // namespace

BrkgaPartition brkga_partition(std::size_t population, double elite_fraction,
                               double mutant_fraction) {
  std::size_t elite = std::max<std::size_t>(1, round_half_up(elite_fraction * population));
  elite = std::min(elite, population);
  std::size_t mutants = std::min(round_half_up(mutant_fraction * population), population - elite);
  return {elite, mutants, population - elite - mutants};
}

RunResult run_brkga(SearchContext& ctx, const SolverParams& params, QController* controller) {
  params.validate(SolverKind::BRKGA);
  auto& rng = ctx.rng();
  std::vector<Solution> pop =
      random_population(static_cast<std::size_t>(params.population_size), ctx);
  sort_population(pop);
  double best = pop.front().fitness.objective;
  double prev_gen = best;
  double last_gen = best;

  while (!ctx.poll_clock()) {
    const SolverParams& cfg = next_params(controller, params, prev_gen, last_gen, ctx);
    const auto p = static_cast<std::size_t>(cfg.population_size);
    // A controller may resize the population: trim the worst or top up.
    if (pop.size() > p) pop.resize(p);
    while (pop.size() < p && !ctx.stopped()) pop.push_back(random_solution(ctx));
    sort_population(pop);
    const auto part = brkga_partition(pop.size(), cfg.elite_fraction, cfg.mutant_fraction);

    std::vector<Solution> next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(part.elite));
    next.reserve(pop.size());
    for (std::size_t m = 0; m < part.mutants && !ctx.stopped(); ++m) next.push_back(random_solution(ctx));
    const std::size_t n = ctx.dimension();
    for (std::size_t c = 0; c < part.offspring && !ctx.stopped(); ++c) {
      const Solution& elite = pop[rng.index(part.elite)];
      const Solution& other = pop[rng.index(pop.size())];
      Solution child;
      child.keys.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        child.keys[i] = rng.uniform() < cfg.inherit_prob ? elite.keys[i] : other.keys[i];
      }
      child.fitness = ctx.evaluate(child.keys);
      next.push_back(std::move(child));
    }
    if (next.size() < pop.size()) {
      // Budget ran out mid-generation; keep the survivors of the old one.
      for (std::size_t i = next.size(); i < pop.size(); ++i) next.push_back(pop[i]);
    }
    pop = std::move(next);
    sort_population(pop);

    if (pop.front().fitness.objective < best) {
      pop.front() = rvnd(pop.front(), ctx);
      sort_population(pop);
    }
    best = std::min(best, pop.front().fitness.objective);
    prev_gen = last_gen;
    last_gen = pop.front().fitness.objective;
  }
  return make_result(ctx);
}

namespace {

const Solution& tournament(const std::vector<Solution>& pop, RngStream& rng) {
  const Solution& a = pop[rng.index(pop.size())];
  const Solution& b = pop[rng.index(pop.size())];
  return better(b, a) ? b : a;
}

}  // namespace

RunResult run_ga(SearchContext& ctx, const SolverParams& params, QController* controller) {
  params.validate(SolverKind::GA);
  auto& rng = ctx.rng();
  std::vector<Solution> pop =
      random_population(static_cast<std::size_t>(params.population_size), ctx);
  double prev_gen = std::min_element(pop.begin(), pop.end(), better)->fitness.objective;
  double last_gen = prev_gen;

  while (!ctx.poll_clock()) {
    const SolverParams& cfg = next_params(controller, params, prev_gen, last_gen, ctx);
    const auto p = static_cast<std::size_t>(cfg.population_size);
    auto best_it = std::min_element(pop.begin(), pop.end(), better);
    std::vector<Solution> next;
    next.reserve(p);
    next.push_back(rvnd(*best_it, ctx));

    const BlendParams crossover{0.5, cfg.mutation_prob, 1};
    while (next.size() < p && !ctx.stopped()) {
      const Solution& a = tournament(pop, rng);
      const Solution& b = tournament(pop, rng);
      if (rng.uniform() < cfg.crossover_prob) {
        Solution c1{blend(a.keys, b.keys, crossover, rng), {}};
        c1.fitness = ctx.evaluate(c1.keys);
        next.push_back(std::move(c1));
        if (next.size() < p && !ctx.stopped()) {
          Solution c2{blend(b.keys, a.keys, crossover, rng), {}};
          c2.fitness = ctx.evaluate(c2.keys);
          next.push_back(std::move(c2));
        }
      } else {
        next.push_back(a);
        if (next.size() < p) next.push_back(b);
      }
    }
    pop = std::move(next);
    prev_gen = last_gen;
    last_gen = std::min_element(pop.begin(), pop.end(), better)->fitness.objective;
  }
  return make_result(ctx);
}

RunResult run_sa(SearchContext& ctx, const SolverParams& params, QController* controller) {
  params.validate(SolverKind::SA);
  auto& rng = ctx.rng();
  Solution current = random_solution(ctx);
  double temperature = params.initial_temp;
  double prev_iter = current.fitness.objective;
  double last_iter = prev_iter;

  while (!ctx.poll_clock()) {
    const SolverParams& cfg = next_params(controller, params, prev_iter, last_iter, ctx);
    const ShakeParams shaking{cfg.beta_min, cfg.beta_max};
    const auto iterations = static_cast<std::size_t>(cfg.iterations_per_temp);
    for (std::size_t it = 0; it < iterations && !ctx.stopped(); ++it) {
      Solution candidate{shake(current.keys, shaking, rng), {}};
      candidate.fitness = ctx.evaluate(candidate.keys);
      if (metropolis_accept(candidate.fitness.objective - current.fitness.objective, temperature, rng)) {
        current = std::move(candidate);
      }
    }
    current = rvnd(current, ctx);
    cool(temperature, cfg);
    prev_iter = last_iter;
    last_iter = current.fitness.objective;
  }
  return make_result(ctx);
}

Solution grasp_construct(const Solution& start, double grid_spacing, SearchContext& ctx) {
  auto& rng = ctx.rng();
  const std::size_t n = start.keys.size();
  const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(1.0 / grid_spacing - 1e-9)));
  Solution x = start;
  std::vector<std::size_t> unfixed(n);
  for (std::size_t i = 0; i < n; ++i) unfixed[i] = i;

  std::vector<double> best_value(n);
  std::vector<double> best_obj(n);
  while (!unfixed.empty() && !ctx.stopped()) {
    for (std::size_t k : unfixed) {
      const double original = x.keys[k];
      best_value[k] = original;
      best_obj[k] = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < cells; ++c) {
        if (ctx.stopped()) break;
        const double lo = static_cast<double>(c) * grid_spacing;
        const double hi = std::min(lo + grid_spacing, 1.0);
        if (!(lo < hi)) break;
        x.keys[k] = rng.uniform(lo, hi);
        const double f = ctx.evaluate(x.keys).objective;
        if (f < best_obj[k]) {
          best_obj[k] = f;
          best_value[k] = x.keys[k];
        }
      }
      x.keys[k] = original;
    }
    if (ctx.stopped()) break;

    double lo_obj = std::numeric_limits<double>::infinity();
    double hi_obj = -std::numeric_limits<double>::infinity();
    for (std::size_t k : unfixed) {
      lo_obj = std::min(lo_obj, best_obj[k]);
      hi_obj = std::max(hi_obj, best_obj[k]);
    }
    const double gamma = rng.uniform();
    const double threshold = lo_obj + gamma * (hi_obj - lo_obj);
    std::vector<std::size_t> rcl;
    for (std::size_t pos = 0; pos < unfixed.size(); ++pos) {
      if (best_obj[unfixed[pos]] <= threshold) rcl.push_back(pos);
    }
    const std::size_t pos = rcl[rng.index(rcl.size())];
    const std::size_t k = unfixed[pos];
    x.keys[k] = best_value[k];
    x.fitness.objective = best_obj[k];
    unfixed.erase(unfixed.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  x.fitness = ctx.evaluate(x.keys);
  return x;
}

RunResult run_grasp(SearchContext& ctx, const SolverParams& params, QController* controller) {
  params.validate(SolverKind::GRASP);
  auto& rng = ctx.rng();
  Solution current = random_solution(ctx);
  double temperature = params.initial_temp;
  double h = params.grid_start;
  double prev_iter = current.fitness.objective;
  double last_iter = prev_iter;

  while (!ctx.poll_clock()) {
    const SolverParams& cfg = next_params(controller, params, prev_iter, last_iter, ctx);
    h = std::clamp(h, cfg.grid_end, cfg.grid_start);
    Solution candidate = rvnd(grasp_construct(current, h, ctx), ctx);
    const double delta = candidate.fitness.objective - current.fitness.objective;
    if (delta < 0.0) {
      current = std::move(candidate);
    } else {
      if (metropolis_accept(delta, temperature, rng)) current = std::move(candidate);
      h /= 2.0;
      if (h < cfg.grid_end) h = cfg.grid_start;
    }
    cool(temperature, cfg);
    prev_iter = last_iter;
    last_iter = current.fitness.objective;
  }
  return make_result(ctx);
}

RunResult run_ils(SearchContext& ctx, const SolverParams& params, QController* controller) {
  params.validate(SolverKind::ILS);
  auto& rng = ctx.rng();
  Solution current = random_solution(ctx);
  double prev_iter = current.fitness.objective;
  double last_iter = prev_iter;

  while (!ctx.poll_clock()) {
    const SolverParams& cfg = next_params(controller, params, prev_iter, last_iter, ctx);
    Solution perturbed{shake(current.keys, {cfg.beta_min, cfg.beta_max}, rng), {}};
    perturbed.fitness = ctx.evaluate(perturbed.keys);
    Solution candidate = rvnd(perturbed, ctx);
    prev_iter = last_iter;
    last_iter = candidate.fitness.objective;
    if (better(candidate, current)) current = std::move(candidate);
  }
  return make_result(ctx);
}

RunResult run_vns(SearchContext& ctx, const SolverParams& params, QController* controller) {
  params.validate(SolverKind::VNS);
  auto& rng = ctx.rng();
  Solution current = random_solution(ctx);
  std::size_t k = 1;
  double prev_iter = current.fitness.objective;
  double last_iter = prev_iter;

  while (!ctx.poll_clock()) {
    const SolverParams& cfg = next_params(controller, params, prev_iter, last_iter, ctx);
    const auto k_max = static_cast<std::size_t>(cfg.k_max);
    if (k > k_max) k = 1;
    const double beta = std::min(1.0, static_cast<double>(k) * cfg.beta_min);
    Solution perturbed{shake(current.keys, {beta, beta}, rng), {}};
    perturbed.fitness = ctx.evaluate(perturbed.keys);
    Solution candidate = rvnd(perturbed, ctx);
    prev_iter = last_iter;
    last_iter = candidate.fitness.objective;
    if (better(candidate, current)) {
      current = std::move(candidate);
      k = 1;
    } else {
      k = k + 1 > k_max ? 1 : k + 1;
    }
  }
  return make_result(ctx);
}

void pso_move(KeyVector& position, std::vector<double>& velocity, const KeyVector& personal_best,
              const KeyVector& global_best, const SolverParams& params, RngStream& rng) {
  for (std::size_t j = 0; j < position.size(); ++j) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    velocity[j] = params.inertia * velocity[j] +
                  params.cognitive * r1 * (personal_best[j] - position[j]) +
                  params.social * r2 * (global_best[j] - position[j]);
    position[j] = clamp_key(position[j] + velocity[j]);
  }
}

RunResult run_pso(SearchContext& ctx, const SolverParams& params, QController* controller) {
  params.validate(SolverKind::PSO);
  auto& rng = ctx.rng();
  const std::size_t n = ctx.dimension();
  std::vector<Solution> swarm =
      random_population(static_cast<std::size_t>(params.population_size), ctx);
  std::vector<std::vector<double>> velocity(swarm.size(), std::vector<double>(n, 0.0));
  std::vector<Solution> personal = swarm;
  Solution global = *std::min_element(swarm.begin(), swarm.end(), better);
  double prev_gen = global.fitness.objective;
  double last_gen = prev_gen;

  auto record = [&](std::size_t i) {
    if (better(swarm[i], personal[i])) personal[i] = swarm[i];
    if (better(swarm[i], global)) global = swarm[i];
  };

  while (!ctx.poll_clock()) {
    const SolverParams& cfg = next_params(controller, params, prev_gen, last_gen, ctx);
    const auto p = static_cast<std::size_t>(cfg.population_size);
    if (swarm.size() > p) {
      swarm.resize(p);
      velocity.resize(p);
      personal.resize(p);
    }
    while (swarm.size() < p && !ctx.stopped()) {
      swarm.push_back(random_solution(ctx));
      velocity.emplace_back(n, 0.0);
      personal.push_back(swarm.back());
      record(swarm.size() - 1);
    }
    double gen_best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < swarm.size() && !ctx.stopped(); ++i) {
      pso_move(swarm[i].keys, velocity[i], personal[i].keys, global.keys, cfg, rng);
      swarm[i].fitness = ctx.evaluate(swarm[i].keys);
      gen_best = std::min(gen_best, swarm[i].fitness.objective);
      record(i);
    }
    if (!ctx.stopped() && !swarm.empty()) {
      const std::size_t i = rng.index(swarm.size());
      swarm[i] = rvnd(swarm[i], ctx);
      gen_best = std::min(gen_best, swarm[i].fitness.objective);
      record(i);
    }
    prev_gen = last_gen;
    last_gen = gen_best;
  }
  return make_result(ctx);
}

Solution lns_destroy_repair(const Solution& start, double beta_min, double beta_max,
                            SearchContext& ctx) {
  auto& rng = ctx.rng();
  const std::size_t n = start.keys.size();
  const double beta = beta_min == beta_max ? beta_min : rng.uniform(beta_min, beta_max);
  const std::size_t removed = std::min(n, std::max<std::size_t>(1, shake_move_count(beta, n)));
  // The first `removed` entries of a random order are the destroyed keys,
  // already in a random repair order.
  const auto order = random_order(n, rng);

  Solution x = start;
  for (std::size_t r = 0; r < removed; ++r) {
    const std::size_t k = order[r];
    double best_value = x.keys[k];
    Fitness best_fit;
    for (std::size_t j = 0; j + 1 < kFarey.size(); ++j) {
      if (ctx.stopped() && best_fit.objective < std::numeric_limits<double>::infinity()) break;
      x.keys[k] = clamp_key(rng.uniform_open(kFarey[j], kFarey[j + 1]));
      Fitness f = ctx.evaluate(x.keys);
      if (f.objective < best_fit.objective) {
        best_fit = f;
        best_value = x.keys[k];
      }
    }
    x.keys[k] = best_value;
    x.fitness = best_fit;
    if (ctx.stopped()) break;
  }
  return x;
}

RunResult run_lns(SearchContext& ctx, const SolverParams& params, QController* controller) {
  params.validate(SolverKind::LNS);
  auto& rng = ctx.rng();
  Solution current = random_solution(ctx);
  Solution best = current;
  double temperature = params.initial_temp;
  double prev_iter = current.fitness.objective;
  double last_iter = prev_iter;

  while (!ctx.poll_clock()) {
    const SolverParams& cfg = next_params(controller, params, prev_iter, last_iter, ctx);
    Solution candidate = lns_destroy_repair(current, cfg.beta_min, cfg.beta_max, ctx);
    if (metropolis_accept(candidate.fitness.objective - current.fitness.objective, temperature, rng)) {
      current = candidate;
    }
    if (better(candidate, best)) {
      best = rvnd(candidate, ctx);
      current = best;
    }
    cool(temperature, cfg);
    prev_iter = last_iter;
    last_iter = current.fitness.objective;
  }
  return make_result(ctx);
}

RunResult run_solver(SolverKind kind, SearchContext& ctx, const SolverParams& params,
                     QController* controller) {
  switch (kind) {
    case SolverKind::BRKGA: return run_brkga(ctx, params, controller);
    case SolverKind::SA: return run_sa(ctx, params, controller);
    case SolverKind::GRASP: return run_grasp(ctx, params, controller);
    case SolverKind::ILS: return run_ils(ctx, params, controller);
    case SolverKind::VNS: return run_vns(ctx, params, controller);
    case SolverKind::PSO: return run_pso(ctx, params, controller);
    case SolverKind::GA: return run_ga(ctx, params, controller);
    case SolverKind::LNS: return run_lns(ctx, params, controller);
  }
  throw std::invalid_argument("unknown solver");
}

PortfolioConfig default_portfolio(ProblemKind problem, std::vector<SolverKind> solvers) {
  PortfolioConfig cfg;
  cfg.solvers = std::move(solvers);
  for (auto k : cfg.solvers) cfg.params.push_back(table_params(problem, k));
  return cfg;
}

namespace {

std::uint64_t solver_stream(SolverKind kind) {
  auto it = std::find(kAllSolvers.begin(), kAllSolvers.end(), kind);
  return 1 + static_cast<std::uint64_t>(std::distance(kAllSolvers.begin(), it));
}

void write_trace(const std::string& path, const std::vector<RunResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file " + path);
  out << "solver,seconds,objective\n" << std::setprecision(12);
  for (const auto& r : results) {
    for (const auto& t : r.trace) out << r.solver << ',' << t.seconds << ',' << t.objective << '\n';
  }
}

}  // namespace

PortfolioResult run_portfolio(const Decoder& decoder, const PortfolioConfig& config) {
  if (config.solvers.empty()) throw std::invalid_argument("portfolio needs at least one solver");
  if (config.params.size() != config.solvers.size()) {
    throw std::invalid_argument("portfolio needs one parameter record per solver");
  }
  config.stop.validate();
  for (std::size_t i = 0; i < config.solvers.size(); ++i) config.params[i].validate(config.solvers[i]);

  const auto start = Clock::now();
  std::atomic<bool> cancel{false};
  ElitePool pool(config.pool_capacity);
  const bool sequential = config.workers == 1;
  const std::size_t k = config.solvers.size();

  StopCriterion share = config.stop;
  if (sequential) share.time_limit = config.stop.time_limit / static_cast<double>(k);

  PortfolioResult result;
  {
    SearchContext init_ctx(decoder, &pool, RngStream(config.seed, 0), share, start, &cancel, "pool");
    init_pool(pool, init_ctx);
    result.pool_init = make_result(init_ctx);
  }

  std::vector<RunResult> results(k);
  std::vector<std::unique_ptr<QController>> controllers(k);
  auto run_single = [&](std::size_t i, Clock::time_point solver_start) {
    const SolverKind kind = config.solvers[i];
    SearchContext ctx(decoder, &pool, RngStream(config.seed, solver_stream(kind)),
                      sequential ? share : config.stop, solver_start, &cancel,
                      std::string(to_string(kind)));
    if (config.q_learning) controllers[i] = std::make_unique<QController>(kind, config.params[i]);
    results[i] = run_solver(kind, ctx, config.params[i], controllers[i].get());
  };
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run_one = [&](std::size_t i, Clock::time_point solver_start) {
    try {
      run_single(i, solver_start);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      cancel.store(true);
    }
  };

  if (sequential) {
    for (std::size_t i = 0; i < k; ++i) run_one(i, Clock::now());
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(k);
    for (std::size_t i = 0; i < k; ++i) threads.emplace_back(run_one, i, start);
  }
  if (failure) std::rethrow_exception(failure);

  result.per_solver = results;
  result.best = result.pool_init;
  result.best.solver = "pool";
  for (const auto& r : results) {
    if (r.best.objective < result.best.best.objective) result.best = r;
  }
  result.final_pool = pool.snapshot();

  if (!config.trace_path.empty()) write_trace(config.trace_path, result.per_solver);
  if (!config.pool_dump_path.empty()) pool.dump(config.pool_dump_path);
  if (config.q_learning && !config.qtable_dir.empty()) {
    std::filesystem::create_directories(config.qtable_dir);
    for (std::size_t i = 0; i < k; ++i) {
      controllers[i]->table().dump_csv(config.qtable_dir + "/qtable_" +
                                       std::string(to_string(config.solvers[i])) + ".csv");
    }
  }
  return result;
}

}  // namespace rko
