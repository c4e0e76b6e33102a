#ifndef RKO_HARNESS_METRICS_HPP_
#define RKO_HARNESS_METRICS_HPP_

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rko::harness {

class UndefinedBaselineError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative percentage deviation of `value` from a positive reference.
double rpd(double value, double best_known);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
/// Times below this are raised to it before ratios are taken.
inline constexpr double kMinProfileTime = 1e-3;

struct ProfileCurve {
  std::string method;
  /// Sorted (tau, rho) breakpoints of the step function.
  std::vector<std::pair<double, double>> steps;
  /// Fraction of instances with ratio <= tau.
  double rho(double tau) const;
};

struct PerformanceProfile {
  /// ratios[i][h]; infinity when method h missed the tolerance on i.
  std::vector<std::vector<double>> ratios;
  std::vector<ProfileCurve> curves;
};

/// times[i][h] and rpd_best[i][h] are indexed by instance then method.
PerformanceProfile performance_profile(const std::vector<std::string>& methods,
                                       const std::vector<std::vector<double>>& times,
                                       const std::vector<std::vector<double>>& rpd_best,
                                       double tolerance);

/// "method,log2_tau,rho" rows, one per breakpoint.
void write_profile_csv(std::ostream& out, const PerformanceProfile& profile);

struct WilcoxonResult {
  double p_value = 1.0;
  double w_plus = 0.0;
  std::size_t effective_n = 0;
  bool exact = true;
  /// Every difference was zero.
  bool degenerate = false;
};

inline constexpr std::size_t kMinWilcoxonPairs = 5;
inline constexpr std::size_t kMaxExactWilcoxon = 12;

/// Signed-rank test of H1: x tends to be smaller than y. Zero differences
/// are dropped, tied magnitudes share average ranks. Exact null
/// distribution up to kMaxExactWilcoxon non-zero pairs, normal
/// approximation with tie and continuity corrections beyond.
WilcoxonResult wilcoxon_one_sided(const std::vector<double>& x, const std::vector<double>& y);

/// Average ranks (1-based) of the values.
std::vector<double> average_ranks(const std::vector<double>& values);

}  // namespace rko::harness

#endif  // RKO_HARNESS_METRICS_HPP_
