#include "rko/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace rko::harness {

double rpd(double value, double best_known) {
  if (!(best_known > 0.0)) throw UndefinedBaselineError("RPD needs a positive best-known value");
  return (value - best_known) / best_known * 100.0;
}

double ProfileCurve::rho(double tau) const {
  double r = 0.0;
  for (const auto& [t, value] : steps) {
    if (t <= tau) r = value;
  }
  return r;
}

PerformanceProfile performance_profile(const std::vector<std::string>& methods,
                                       const std::vector<std::vector<double>>& times,
                                       const std::vector<std::vector<double>>& rpd_best,
                                       double tolerance) {
  if (methods.empty()) throw std::invalid_argument("performance profile needs at least one method");
  if (times.empty()) throw std::invalid_argument("performance profile needs at least one instance");
  if (rpd_best.size() != times.size()) throw std::invalid_argument("time and RPD tables differ in size");
  const std::size_t ni = times.size();
  const std::size_t nh = methods.size();

  PerformanceProfile prof;
  prof.ratios.assign(ni, std::vector<double>(nh, kInfinity));
  for (std::size_t i = 0; i < ni; ++i) {
    if (times[i].size() != nh || rpd_best[i].size() != nh) {
      throw std::invalid_argument("performance profile row has the wrong method count");
    }
    std::vector<double> t(nh, kInfinity);
    for (std::size_t h = 0; h < nh; ++h) {
      if (rpd_best[i][h] <= tolerance && std::isfinite(times[i][h])) t[h] = std::max(times[i][h], kMinProfileTime);
    }
    const double fastest = *std::min_element(t.begin(), t.end());
    if (!std::isfinite(fastest)) continue;
    for (std::size_t h = 0; h < nh; ++h) prof.ratios[i][h] = t[h] / fastest;
  }

  for (std::size_t h = 0; h < nh; ++h) {
    ProfileCurve curve{methods[h], {}};
    std::vector<double> r;
    for (std::size_t i = 0; i < ni; ++i) {
      if (std::isfinite(prof.ratios[i][h])) r.push_back(prof.ratios[i][h]);
    }
    std::sort(r.begin(), r.end());
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double frac = static_cast<double>(k + 1) / static_cast<double>(ni);
      if (!curve.steps.empty() && curve.steps.back().first == r[k]) {
        curve.steps.back().second = frac;
      } else {
        curve.steps.emplace_back(r[k], frac);
      }
    }
    prof.curves.push_back(std::move(curve));
  }
  return prof;
}

void write_profile_csv(std::ostream& out, const PerformanceProfile& profile) {
  out << "method,log2_tau,rho\n";
  for (const auto& c : profile.curves) {
    for (const auto& [tau, rho] : c.steps) out << c.method << ',' << std::log2(tau) << ',' << rho << '\n';
  }
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_one_sided(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("Wilcoxon samples must be paired");
  if (x.size() < kMinWilcoxonPairs) throw std::invalid_argument("Wilcoxon test needs at least 5 pairs");

  std::vector<double> diff;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) diff.push_back(x[i] - y[i]);
  }
  WilcoxonResult res;
  res.effective_n = diff.size();
  if (diff.empty()) {
    res.degenerate = true;
    return res;
  }
  std::vector<double> mag(diff.size());
  for (std::size_t i = 0; i < diff.size(); ++i) mag[i] = std::fabs(diff[i]);
  const auto ranks = average_ranks(mag);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    if (diff[i] > 0.0) res.w_plus += ranks[i];
  }

  const std::size_t n = diff.size();
  if (n <= kMaxExactWilcoxon) {
    // Average ranks are multiples of 1/2; compare on doubled integers.
    std::vector<long> twice(n);
    for (std::size_t i = 0; i < n; ++i) twice[i] = std::lround(2.0 * ranks[i]);
    const long observed = std::lround(2.0 * res.w_plus);
    std::size_t at_most = 0;
    const std::size_t patterns = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      long w = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) w += twice[i];
      }
      at_most += w <= observed ? 1 : 0;
    }
    res.p_value = static_cast<double>(at_most) / static_cast<double>(patterns);
    return res;
  }

  res.exact = false;
  const auto nd = static_cast<double>(n);
  const double mean = nd * (nd + 1.0) / 4.0;
  double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0;
  std::vector<double> sorted = mag;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i);
    var -= (t * t * t - t) / 48.0;
    i = j;
  }
  if (!(var > 0.0)) {
    res.p_value = 1.0;
    return res;
  }
  const double z = (res.w_plus - mean + 0.5) / std::sqrt(var);
  res.p_value = std::min(1.0, normal_cdf(z));
  return res;
}

}  // namespace rko::harness
