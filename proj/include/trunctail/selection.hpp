#ifndef TRUNCTAIL_SELECTION_HPP
#define TRUNCTAIL_SELECTION_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace trunctail {

struct KStarResult {
  std::size_t k_star = 0;
  double gamma1_hat = 0.0;   // curve value at k_star
  double objective = 0.0;    // criterion value at k_star
  std::size_t scan_min = 0;  // scan window actually used
  std::size_t scan_max = 0;
};

/// Stability-based choice of the sample fraction: minimize over k the mean of
/// i^theta |gamma(i) - median(gamma(1..k))| for i = 1..k. `curve` holds the
/// estimate at k in entry [k-1]. Candidates whose prefix contains a
/// non-finite estimate are skipped; ties go to the smallest k.
KStarResult thomas_reiss_kstar(const std::vector<double>& curve,
                               std::size_t scan_min, std::size_t scan_max,
                               double theta = 0.3);

/// Extreme-quantile extrapolation: q_v = T (v / tail_prob)^{-gamma1}, where
/// tail_prob is the estimated survival at the threshold T.
double weissman_quantile(double v, double threshold, double tail_prob,
                         double gamma1);

/// Reciprocal transform for induction-time records: a record (m, t) with
/// elapsed time m and onset time t inside an 8-unit window becomes
/// x = 1 / (8 - t + eps), y = 1 / (m + eps). Right truncation of the
/// original times turns into x <= y.
std::pair<double, double> aids_transform(double m, double t,
                                         double eps = 0.05);

/// Invert the reciprocal scale back to a calendar duration:
/// 1 / q_v - 8 + eps_end.
double end_time(double q_v, double eps_end = 0.01);

}  // namespace trunctail

#endif
