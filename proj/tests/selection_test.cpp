#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "trunctail/errors.hpp"
#include "trunctail/rng.hpp"
#include "trunctail/selection.hpp"

using namespace trunctail;

namespace {

// Independent O(k^2) recomputation of the stability criterion.
double brute_objective(const std::vector<double>& curve, std::size_t k,
                       double theta) {
  std::vector<double> g(curve.begin(), curve.begin() + static_cast<long>(k));
  std::vector<double> sorted = g;
  std::sort(sorted.begin(), sorted.end());
  const double med = k % 2 == 1
                         ? sorted[k / 2]
                         : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
  double acc = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    acc += std::pow(static_cast<double>(i), theta) * std::fabs(g[i - 1] - med);
  }
  return acc / static_cast<double>(k);
}

std::vector<double> random_curve(std::size_t len, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> c(len);
  for (auto& v : c) v = 0.3 + rng.uniform01();
  return c;
}

}  // namespace

TEST_CASE("objective matches brute force on random curves") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto curve = random_curve(60, seed);
    const auto res = thomas_reiss_kstar(curve, 5, 60);
    double best = 1e300;
    std::size_t best_k = 0;
    for (std::size_t k = 5; k <= 60; ++k) {
      const double obj = brute_objective(curve, k, 0.3);
      if (obj < best) {
        best = obj;
        best_k = k;
      }
    }
    CHECK(res.k_star == best_k);
    CHECK(res.objective == doctest::Approx(best).epsilon(1e-12));
    CHECK(res.gamma1_hat == doctest::Approx(curve[best_k - 1]));
  }
}

TEST_CASE("selection is scale invariant") {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    auto curve = random_curve(80, seed);
    const auto base = thomas_reiss_kstar(curve, 10, 80);
    for (auto& v : curve) v *= 7.25;
    const auto scaled = thomas_reiss_kstar(curve, 10, 80);
    CHECK(base.k_star == scaled.k_star);
  }
}

TEST_CASE("median convention: average of the two middle values") {
  // Curve built so the even-median choice decides the argmin.
  const std::vector<double> curve{1.0, 3.0, 1.0, 3.0};
  const auto res = thomas_reiss_kstar(curve, 2, 4);
  CHECK(res.objective ==
        doctest::Approx(brute_objective(curve, res.k_star, 0.3)));
  // Explicit pin: for k = 4 the median is (1+3)/2 = 2.
  CHECK(brute_objective(curve, 4, 0.3) ==
        doctest::Approx((std::pow(1.0, 0.3) + std::pow(2.0, 0.3) +
                         std::pow(3.0, 0.3) + std::pow(4.0, 0.3)) /
                        4.0));
}

TEST_CASE("non-finite prefixes are skipped, empty windows rejected") {
  std::vector<double> curve = random_curve(30, 7);
  curve[3] = std::nan("");
  // Every k >= 4 includes the NaN at i = 4, so only k in {2, 3} qualify.
  CHECK_THROWS_AS(thomas_reiss_kstar(curve, 5, 30), NumericalError);
  const auto res = thomas_reiss_kstar(curve, 2, 30);
  CHECK(res.k_star <= 3);
  CHECK_THROWS_AS(thomas_reiss_kstar(curve, 40, 30), std::invalid_argument);
  CHECK_THROWS_AS(thomas_reiss_kstar(curve, 1, 30), std::invalid_argument);
  CHECK_THROWS_AS(thomas_reiss_kstar({}, 2, 10), std::invalid_argument);
}

TEST_CASE("weissman quantile value and monotonicity") {
  // T (v / tail)^{-gamma}: direct evaluation
  CHECK(weissman_quantile(0.01, 2.0, 0.1, 0.5) ==
        doctest::Approx(2.0 * std::sqrt(10.0)).epsilon(1e-12));
  double prev = 1e300;
  for (double v : {0.001, 0.005, 0.02, 0.1}) {
    const double q = weissman_quantile(v, 2.0, 0.1, 0.5);
    CHECK(q < prev);
    prev = q;
  }
  CHECK_THROWS_AS(weissman_quantile(0.0, 2.0, 0.1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(weissman_quantile(0.01, 2.0, 0.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(weissman_quantile(0.01, -1.0, 0.1, 0.5),
                  std::invalid_argument);
}

TEST_CASE("record transform: direct values and boundary") {
  const auto [x, y] = aids_transform(0.0, 0.0, 0.05);
  CHECK(x == doctest::Approx(1.0 / 8.05).epsilon(1e-12));
  CHECK(y == doctest::Approx(20.0).epsilon(1e-12));
  // m + t = 8 puts the pair on the truncation boundary x = y.
  const auto [xb, yb] = aids_transform(3.0, 5.0, 0.05);
  CHECK(xb == doctest::Approx(yb).epsilon(1e-12));
  // Larger onset time moves x toward the boundary.
  CHECK(aids_transform(0.0, 2.0).first > aids_transform(0.0, 1.0).first);
  CHECK_THROWS_AS(aids_transform(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(aids_transform(0.0, 9.0), std::invalid_argument);
  CHECK_THROWS_AS(aids_transform(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("end time inversion") {
  CHECK(end_time(0.061, 0.01) ==
        doctest::Approx(1.0 / 0.061 - 8.0 + 0.01).epsilon(1e-12));
  CHECK(end_time(0.061, 0.01) == doctest::Approx(8.40).epsilon(0.001));
  CHECK(end_time(0.125, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(end_time(0.0, 0.01), std::invalid_argument);
}
