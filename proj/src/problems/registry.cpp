#include "rko/problems/registry.hpp"

#include "rko/problems/ncgpp.hpp"
#include "rko/problems/pmedian.hpp"
#include "rko/problems/set_cover.hpp"
#include "rko/problems/thlp.hpp"
#include "rko/problems/tsp.hpp"

namespace rko::problems {

namespace {

template <typename Instance, typename DecoderType>
LoadedProblem wrap(ProblemKind kind, Instance inst, std::size_t size) {
  auto decoder = std::make_shared<const DecoderType>(std::move(inst));
  LoadedProblem out{kind, decoder, size, {}};
  out.brute_force = [decoder] { return problems::brute_force(decoder->instance()); };
  return out;
}

}  // namespace

LoadedProblem load_problem(ProblemKind kind, const std::string& path, const LoadOptions& options) {
  switch (kind) {
    case ProblemKind::ANpMP: {
      auto inst = parse_orlib_pmed(path, options.alpha);
      const auto n = inst.n;
      return wrap<PMedianInstance, PMedianDecoder>(kind, std::move(inst), n);
    }
    case ProblemKind::NCGPP: {
      auto inst = parse_ncgpp(path);
      const auto n = inst.stations;
      return wrap<NcgppInstance, NcgppDecoder>(kind, std::move(inst), n);
    }
    case ProblemKind::THLP: {
      auto inst = parse_thlp(path);
      const auto n = inst.n;
      return wrap<ThlpInstance, ThlpDecoder>(kind, std::move(inst), n);
    }
    case ProblemKind::TSP: {
      auto inst = parse_tsp(path);
      const auto n = inst.n;
      return wrap<TspInstance, TspDecoder>(kind, std::move(inst), n);
    }
    case ProblemKind::SetCover: {
      auto inst = parse_set_cover(path);
      const auto n = inst.cols;
      return wrap<SetCoverInstance, SetCoverDecoder>(kind, std::move(inst), n);
    }
  }
  throw std::invalid_argument("unknown problem kind");
}

double default_time_limit(ProblemKind kind, std::size_t size) {
  const auto n = static_cast<double>(size);
  return kind == ProblemKind::ANpMP ? 0.1 * n : n;
}

}  // namespace rko::problems
