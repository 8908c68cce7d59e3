#include "trunctail/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trunctail/errors.hpp"

namespace trunctail {

KStarResult thomas_reiss_kstar(const std::vector<double>& curve,
                               std::size_t scan_min, std::size_t scan_max,
                               double theta) {
  if (curve.empty()) throw std::invalid_argument("empty estimate curve");
  if (scan_min < 2) throw std::invalid_argument("scan_min must be >= 2");
  scan_max = std::min(scan_max, curve.size());
  if (scan_min > scan_max) {
    throw std::invalid_argument("scan window is empty");
  }
  if (!(theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");

  KStarResult res;
  res.scan_min = scan_min;
  res.scan_max = scan_max;

  std::vector<double> prefix;  // gamma(1..k), reused across candidates
  std::vector<double> sorted;
  bool found = false;
  for (std::size_t k = scan_min; k <= scan_max; ++k) {
    prefix.assign(curve.begin(), curve.begin() + static_cast<long>(k));
    if (std::any_of(prefix.begin(), prefix.end(),
                    [](double v) { return !std::isfinite(v); })) {
      continue;
    }
    sorted = prefix;
    std::sort(sorted.begin(), sorted.end());
    const double median =
        k % 2 == 1 ? sorted[k / 2] : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      acc += std::pow(static_cast<double>(i), theta) *
             std::fabs(prefix[i - 1] - median);
    }
    const double value = acc / static_cast<double>(k);
    if (!found || value < res.objective) {
      found = true;
      res.objective = value;
      res.k_star = k;
      res.gamma1_hat = curve[k - 1];
    }
  }
  if (!found) {
    throw NumericalError(
        "sample-fraction selection failed: no finite candidate in the scan "
        "window");
  }
  return res;
}

double weissman_quantile(double v, double threshold, double tail_prob,
                         double gamma1) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::invalid_argument("exceedance level v must lie in (0, 1)");
  }
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("threshold must be positive");
  }
  if (!(tail_prob > 0.0 && tail_prob <= 1.0)) {
    throw std::invalid_argument("tail probability must lie in (0, 1]");
  }
  if (!(gamma1 > 0.0)) {
    throw std::invalid_argument("gamma1 must be positive");
  }
  return threshold * std::pow(v / tail_prob, -gamma1);
}

std::pair<double, double> aids_transform(double m, double t, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw std::invalid_argument("elapsed time m must be non-negative");
  }
  if (!(t >= 0.0 && t <= 8.0)) {
    throw std::invalid_argument("onset time t must lie in [0, 8]");
  }
  return {1.0 / (8.0 - t + eps), 1.0 / (m + eps)};
}

double end_time(double q_v, double eps_end) {
  if (!(q_v > 0.0)) throw std::invalid_argument("q_v must be positive");
  return 1.0 / q_v - 8.0 + eps_end;
}

}  // namespace trunctail
