#include "rko/params.hpp"

#include <stdexcept>

namespace rko {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::BRKGA: return "brkga";
    case SolverKind::SA: return "sa";
    case SolverKind::GRASP: return "grasp";
    case SolverKind::ILS: return "ils";
    case SolverKind::VNS: return "vns";
    case SolverKind::PSO: return "pso";
    case SolverKind::GA: return "ga";
    case SolverKind::LNS: return "lns";
  }
  return "?";
}

std::optional<SolverKind> solver_from_string(std::string_view name) {
  for (auto k : kAllSolvers) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::ANpMP: return "anpmp";
    case ProblemKind::NCGPP: return "ncgpp";
    case ProblemKind::THLP: return "thlp";
    case ProblemKind::TSP: return "tsp";
    case ProblemKind::SetCover: return "setcover";
  }
  return "?";
}

std::optional<ProblemKind> problem_from_string(std::string_view name) {
  for (auto k : {ProblemKind::ANpMP, ProblemKind::NCGPP, ProblemKind::THLP, ProblemKind::TSP,
                 ProblemKind::SetCover}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

constexpr std::array<std::string_view, kParamCount> kParamNames{
    "p",    "pe",     "pm",     "rho", "pc", "mu", "T0", "SAmax", "alpha",
    "beta_min", "beta_max", "k_max", "h_s", "h_e", "c1", "c2", "w"};

}  // namespace

std::string_view to_string(ParamId id) { return kParamNames[static_cast<std::size_t>(id)]; }

std::optional<ParamId> param_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kParamNames.size(); ++i) {
    if (kParamNames[i] == name) return static_cast<ParamId>(i);
  }
  return std::nullopt;
}

bool is_integer_param(ParamId id) {
  return id == ParamId::PopulationSize || id == ParamId::IterationsPerTemp || id == ParamId::KMax;
}

double& SolverParams::at(ParamId id) {
  switch (id) {
    case ParamId::PopulationSize: return population_size;
    case ParamId::EliteFraction: return elite_fraction;
    case ParamId::MutantFraction: return mutant_fraction;
    case ParamId::InheritProb: return inherit_prob;
    case ParamId::CrossoverProb: return crossover_prob;
    case ParamId::MutationProb: return mutation_prob;
    case ParamId::InitialTemp: return initial_temp;
    case ParamId::IterationsPerTemp: return iterations_per_temp;
    case ParamId::CoolingRate: return cooling_rate;
    case ParamId::BetaMin: return beta_min;
    case ParamId::BetaMax: return beta_max;
    case ParamId::KMax: return k_max;
    case ParamId::GridStart: return grid_start;
    case ParamId::GridEnd: return grid_end;
    case ParamId::Cognitive: return cognitive;
    case ParamId::Social: return social;
    case ParamId::Inertia: return inertia;
  }
  throw std::invalid_argument("unknown parameter id");
}

double SolverParams::at(ParamId id) const { return const_cast<SolverParams&>(*this).at(id); }

std::vector<ParamId> tuned_params(SolverKind kind) {
  using P = ParamId;
  switch (kind) {
    case SolverKind::BRKGA:
      return {P::PopulationSize, P::EliteFraction, P::MutantFraction, P::InheritProb};
    case SolverKind::GA: return {P::PopulationSize, P::CrossoverProb, P::MutationProb};
    case SolverKind::SA:
      return {P::InitialTemp, P::IterationsPerTemp, P::CoolingRate, P::BetaMin, P::BetaMax};
    case SolverKind::ILS: return {P::BetaMin, P::BetaMax};
    case SolverKind::VNS: return {P::BetaMin, P::KMax};
    case SolverKind::GRASP: return {P::GridStart, P::GridEnd};
    case SolverKind::PSO: return {P::PopulationSize, P::Cognitive, P::Social, P::Inertia};
    case SolverKind::LNS: return {P::InitialTemp, P::CoolingRate, P::BetaMin, P::BetaMax};
  }
  return {};
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void SolverParams::validate(SolverKind kind) const {
  switch (kind) {
    case SolverKind::BRKGA:
      require(population_size >= 3, "BRKGA population must be >= 3");
      require(elite_fraction > 0.0 && elite_fraction < 0.5, "BRKGA elite fraction must be in (0, 0.5)");
      require(mutant_fraction >= 0.0 && mutant_fraction < 1.0 - elite_fraction,
              "BRKGA mutant fraction must be below 1 - elite fraction");
      require(inherit_prob > 0.5 && inherit_prob <= 1.0, "BRKGA inheritance probability must be in (0.5, 1]");
      break;
    case SolverKind::GA:
      require(population_size >= 2, "GA population must be >= 2");
      require(unit(crossover_prob) && unit(mutation_prob), "GA probabilities must be in [0,1]");
      break;
    case SolverKind::SA:
    case SolverKind::LNS:
      require(initial_temp > 0.0, "initial temperature must be positive");
      require(cooling_rate > 0.0 && cooling_rate < 1.0, "cooling rate must be in (0,1)");
      require(unit(beta_min) && unit(beta_max) && beta_min <= beta_max, "shake rates invalid");
      if (kind == SolverKind::SA) require(iterations_per_temp >= 1, "SAmax must be >= 1");
      break;
    case SolverKind::ILS:
      require(unit(beta_min) && unit(beta_max) && beta_min <= beta_max, "shake rates invalid");
      break;
    case SolverKind::VNS:
      require(unit(beta_min), "VNS beta_min must be in [0,1]");
      require(k_max >= 1, "VNS k_max must be >= 1");
      break;
    case SolverKind::GRASP:
      require(grid_start > 0.0 && grid_start <= 1.0, "GRASP h_s must be in (0,1]");
      require(grid_end > 0.0 && grid_end <= grid_start, "GRASP h_e must be in (0, h_s]");
      require(initial_temp > 0.0 && cooling_rate > 0.0 && cooling_rate < 1.0,
              "GRASP acceptance temperature invalid");
      break;
    case SolverKind::PSO:
      require(population_size >= 1, "PSO swarm size must be >= 1");
      require(cognitive >= 0.0 && social >= 0.0 && inertia >= 0.0, "PSO coefficients must be >= 0");
      break;
  }
}

SolverParams table_params(ProblemKind problem, SolverKind kind) {
  SolverParams p;
  const bool ncgpp = problem == ProblemKind::NCGPP;
  const bool thlp = problem == ProblemKind::THLP;
  switch (kind) {
    case SolverKind::BRKGA:
      p.population_size = 1597;
      p.elite_fraction = thlp ? 0.15 : 0.10;
      p.mutant_fraction = 0.20;
      p.inherit_prob = 0.70;
      break;
    case SolverKind::GA:
      p.population_size = thlp ? 600 : 1000;
      p.crossover_prob = thlp ? 0.99 : 0.85;
      p.mutation_prob = thlp ? 0.005 : (ncgpp ? 0.002 : 0.03);
      break;
    case SolverKind::SA:
      p.initial_temp = (ncgpp || thlp) ? 1e6 : 1e4;
      p.iterations_per_temp = thlp ? 1500 : (ncgpp ? 1000 : 100);
      p.cooling_rate = 0.99;
      p.beta_min = thlp ? 0.01 : (ncgpp ? 0.005 : 0.10);
      p.beta_max = (ncgpp || thlp) ? 0.05 : 0.20;
      break;
    case SolverKind::ILS:
      p.beta_min = thlp ? 0.05 : (ncgpp ? 0.005 : 0.15);
      p.beta_max = thlp ? 0.20 : (ncgpp ? 0.10 : 0.40);
      break;
    case SolverKind::VNS:
      p.beta_min = (ncgpp || thlp) ? 0.005 : 0.05;
      p.k_max = (ncgpp || thlp) ? 10 : 6;
      break;
    case SolverKind::GRASP:
      p.grid_start = 0.125;
      p.grid_end = 0.00012;
      p.initial_temp = 1e4;
      p.cooling_rate = 0.99;
      break;
    case SolverKind::PSO:
      p.population_size = thlp ? 200 : (ncgpp ? 50 : 100);
      p.cognitive = 2.05;
      p.social = 2.05;
      p.inertia = 0.73;
      break;
    case SolverKind::LNS:
      p.initial_temp = thlp ? 1e6 : 1000;
      p.cooling_rate = thlp ? 0.97 : 0.90;
      p.beta_min = 0.10;
      p.beta_max = 0.30;
      break;
  }
  return p;
}

}  // namespace rko
