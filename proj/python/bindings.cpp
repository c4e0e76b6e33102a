// Python bindings: load and decode instances, run the portfolio or a single
// solver, compute the harness metrics, and run a benchmark config.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "rko/harness/experiment.hpp"
#include "rko/local_search.hpp"
#include "rko/param_control.hpp"
#include "rko/problems/registry.hpp"
#include "rko/solvers.hpp"

namespace py = pybind11;
using namespace rko;

namespace {

ProblemKind problem_kind(const std::string& name) {
  auto p = problem_from_string(name);
  if (!p) throw py::value_error("unknown problem " + name);
  return *p;
}

/// Decoder backed by a Python callable returning either an objective or an
/// (objective, penalty) pair.
class CallableDecoder : public Decoder {
 public:
  CallableDecoder(std::size_t dimension, py::function fn) : dimension_(dimension), fn_(std::move(fn)) {
    if (dimension_ == 0) throw py::value_error("dimension must be positive");
  }

  std::size_t dimension() const override { return dimension_; }

  Fitness decode(std::span<const double> keys) const override {
    py::gil_scoped_acquire gil;
    py::object out = fn_(std::vector<double>(keys.begin(), keys.end()));
    if (py::isinstance<py::tuple>(out)) {
      auto t = out.cast<std::pair<double, double>>();
      return Fitness{t.first, t.second};
    }
    return Fitness::of(out.cast<double>());
  }

 private:
  std::size_t dimension_;
  py::function fn_;
};

struct Problem {
  ProblemKind kind;
  std::shared_ptr<const Decoder> decoder;
  std::size_t size = 0;
  std::function<problems::Optimum()> brute_force;
};

Problem load(const std::string& problem, const std::string& path, std::size_t alpha) {
  const auto kind = problem_kind(problem);
  auto loaded = problems::load_problem(kind, path, {alpha});
  return {kind, loaded.decoder, loaded.size, loaded.brute_force};
}

py::dict solve(const Decoder& decoder, ProblemKind kind, const std::string& method, std::uint64_t seed,
               std::optional<double> time_limit, std::uint64_t max_evals, std::optional<double> target,
               std::size_t workers, bool q_learning, double fallback_limit) {
  PortfolioConfig cfg;
  if (method == harness::kPortfolioMethod) {
    cfg = default_portfolio(kind);
  } else {
    auto solver = solver_from_string(method);
    if (!solver) throw py::value_error("unknown method " + method);
    cfg = default_portfolio(kind, {*solver});
  }
  cfg.seed = seed;
  cfg.q_learning = q_learning;
  cfg.workers = workers;
  cfg.stop = StopCriterion{time_limit.value_or(fallback_limit), max_evals, target};
  PortfolioResult result;
  {
    py::gil_scoped_release release;
    result = run_portfolio(decoder, cfg);
  }
  const auto& best = result.best;
  py::dict out;
  out["objective"] = best.best.objective;
  out["penalty"] = best.best.penalty;
  out["keys"] = best.best_keys;
  out["solution"] = decoder.describe(best.best_keys);
  out["found_by"] = best.solver;
  out["time_to_best"] = best.time_to_best;
  out["evaluations"] = best.evaluations;
  py::dict per_solver;
  for (const auto& r : result.per_solver) per_solver[py::str(r.solver)] = r.best.objective;
  out["per_solver"] = per_solver;
  return out;
}

}  // namespace

PYBIND11_MODULE(_rko, m) {
  m.doc() = "Random-key optimizer core";

  py::class_<Problem>(m, "Problem")
      .def_property_readonly("kind", [](const Problem& p) { return std::string(to_string(p.kind)); })
      .def_property_readonly("dimension", [](const Problem& p) { return p.decoder->dimension(); })
      .def_readonly("size", &Problem::size)
      .def("decode",
           [](const Problem& p, const std::vector<double>& keys) {
             if (keys.size() != p.decoder->dimension()) throw py::value_error("key vector has the wrong length");
             const auto f = p.decoder->decode(keys);
             return py::make_tuple(f.objective, f.penalty);
           })
      .def("describe",
           [](const Problem& p, const std::vector<double>& keys) {
             if (keys.size() != p.decoder->dimension()) throw py::value_error("key vector has the wrong length");
             return p.decoder->describe(keys);
           })
      .def("brute_force", [](const Problem& p) {
        const auto opt = p.brute_force();
        return py::make_tuple(opt.objective, opt.certificate);
      });

  m.def("load", &load, py::arg("problem"), py::arg("path"), py::arg("alpha") = 2,
        "Read an instance file of the named problem (anpmp, ncgpp, thlp, tsp, setcover).");

  m.def(
      "solve",
      [](const Problem& p, const std::string& method, std::uint64_t seed, std::optional<double> time_limit,
         std::uint64_t max_evals, std::optional<double> target, std::size_t workers, bool q_learning) {
        return solve(*p.decoder, p.kind, method, seed, time_limit, max_evals, target, workers, q_learning,
                     problems::default_time_limit(p.kind, p.size));
      },
      py::arg("problem"), py::arg("method") = "portfolio", py::arg("seed") = 1, py::arg("time_limit") = py::none(),
      py::arg("max_evals") = 0, py::arg("target") = py::none(), py::arg("workers") = 1,
      py::arg("q_learning") = false);

  m.def(
      "minimize",
      [](std::size_t dimension, py::function fn, const std::string& method, std::uint64_t seed, double time_limit,
         std::uint64_t max_evals, std::optional<double> target, std::size_t workers) {
        CallableDecoder decoder(dimension, std::move(fn));
        return solve(decoder, ProblemKind::TSP, method, seed, time_limit, max_evals, target, workers, false,
                     time_limit);
      },
      py::arg("dimension"), py::arg("decoder"), py::arg("method") = "portfolio", py::arg("seed") = 1,
      py::arg("time_limit") = 1.0, py::arg("max_evals") = 0, py::arg("target") = py::none(),
      py::arg("workers") = 1, "Minimize a Python decoder over [0,1)^dimension.");

  m.def("farey", [] { return std::vector<double>(kFarey.begin(), kFarey.end()); });
  m.def(
      "random_vector",
      [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return random_vector(n, rng);
      },
      py::arg("n"), py::arg("seed") = 1, py::arg("stream") = 0);

  m.def("epsilon", &epsilon, py::arg("t_cur"), py::arg("period"), py::arg("period_index"));
  m.def("reward", &reward, py::arg("previous_best"), py::arg("new_best"));

  m.def("rpd", &harness::rpd, py::arg("value"), py::arg("bks"));
  m.def(
      "wilcoxon",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto r = harness::wilcoxon_one_sided(x, y);
        py::dict out;
        out["p_value"] = r.p_value;
        out["w_plus"] = r.w_plus;
        out["n"] = r.effective_n;
        out["exact"] = r.exact;
        return out;
      },
      py::arg("x"), py::arg("y"), "One-sided signed-rank test that x tends to be smaller than y.");
  m.def(
      "performance_profile",
      [](const std::vector<std::string>& methods, const std::vector<std::vector<double>>& times,
         const std::vector<std::vector<double>>& rpd_best, double tolerance) {
        const auto prof = harness::performance_profile(methods, times, rpd_best, tolerance);
        py::dict out;
        for (const auto& c : prof.curves) out[py::str(c.method)] = c.steps;
        return out;
      },
      py::arg("methods"), py::arg("times"), py::arg("rpd_best"), py::arg("tolerance") = 0.0);

  m.def(
      "bench",
      [](const std::string& config_path) {
        const auto cfg = harness::load_config(config_path);
        harness::ExperimentReport report;
        {
          py::gil_scoped_release release;
          report = harness::run_experiment(cfg);
        }
        return py::make_tuple(report.rows.size(), report.failed);
      },
      py::arg("config"), "Run a benchmark config; returns (cells, failed cells).");
}
