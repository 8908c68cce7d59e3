#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "trunctail/errors.hpp"
#include "trunctail/nonparam.hpp"
#include "trunctail/scenario.hpp"

using namespace trunctail;

namespace {

TruncatedSample untruncated_fixture(std::size_t n, std::uint64_t seed) {
  // y far above every x: the truncation never bites and both product-limit
  // curves must collapse to the empirical CDF.
  const auto model = ParametricModel::burr(0.6, 0.25);
  RngStream rng(seed);
  TruncatedSample s;
  double xmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = model.sample(rng);
    xmax = std::max(xmax, x);
    s.pairs.emplace_back(x, 0.0);
  }
  for (auto& p : s.pairs) p.second = 2.0 * xmax + 1.0;
  return s;
}

double hill(const std::vector<double>& sorted_x, std::size_t k) {
  const std::size_t n = sorted_x.size();
  double acc = 0.0;
  for (std::size_t i = n - k; i < n; ++i) acc += std::log(sorted_x[i]);
  return acc / static_cast<double>(k) - std::log(sorted_x[n - k - 1]);
}

}  // namespace

TEST_CASE("risk-set process matches its definition") {
  TruncatedSample s;
  s.pairs = {{1.0, 3.0}, {2.0, 2.5}, {0.5, 0.9}, {2.0, 4.0}};
  CHECK(cn(s, 2.0) == doctest::Approx(3.0 / 4.0));
  CHECK(cn(s, 0.7) == doctest::Approx(1.0 / 4.0));
  CHECK(cn(s, 10.0) == doctest::Approx(0.0));
  CHECK(cn(s, 0.1) == doctest::Approx(0.0));
}

TEST_CASE("product-limit curves reduce to the ecdf without truncation") {
  const auto s = untruncated_fixture(40, 11);
  const auto lb = lynden_bell_cdf(s);
  auto xs = s.xs();
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(lb(xs[i]) ==
          doctest::Approx(static_cast<double>(i + 1) / 40.0).epsilon(1e-12));
  }
  CHECK(lb(xs[0] * 0.5) == doctest::Approx(0.0));
}

TEST_CASE("curves are monotone step functions bounded by [0,1]") {
  const ScenarioSpec spec(Scenario::S1, 0.6, 1.4);
  const auto s = simulate_truncated(spec, 300, 3);
  for (const auto& curve : {lynden_bell_cdf(s), woodroofe_cdf(s)}) {
    double prev = 0.0;
    for (double v : curve.values()) {
      CHECK(v >= prev - 1e-15);
      CHECK(v <= 1.0 + 1e-15);
      prev = v;
    }
    CHECK(curve.values().back() == doctest::Approx(1.0));
  }
}

TEST_CASE("woodroofe dominates lynden-bell pointwise") {
  for (auto scn : {Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4}) {
    const ScenarioSpec spec(scn, 0.6, 1.4);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto s = simulate_truncated(spec, 200, seed);
      const auto lb = lynden_bell_cdf(s);
      const auto wf = woodroofe_cdf(s);
      for (std::size_t i = 0; i < lb.support().size(); ++i) {
        CHECK(wf.values()[i] >= lb.values()[i] - 1e-12);
      }
    }
  }
}

TEST_CASE("both tail estimators reduce to Hill without truncation") {
  const auto s = untruncated_fixture(200, 17);
  auto xs = s.xs();
  std::sort(xs.begin(), xs.end());
  for (std::size_t k : {2, 10, 57, 120}) {
    const double h = hill(xs, k);
    CHECK(gamma1_ww(s, k).gamma1_hat == doctest::Approx(h).epsilon(1e-10));
    // Woodroofe factors exp(-1/(n C)) differ from 1 - 1/(n C) at order n^{-2};
    // the reduction is approximate.
    CHECK(gamma1_bmn(s, k).gamma1_hat == doctest::Approx(h).epsilon(0.05));
  }
}

TEST_CASE("curve sweep agrees with single-k fits") {
  const ScenarioSpec spec(Scenario::S1, 0.6, 1.4);
  const auto s = simulate_truncated(spec, 400, 9);
  const auto cw = gamma1_ww_curve(s, 80);
  const auto cb = gamma1_bmn_curve(s, 80);
  for (std::size_t k : {2, 17, 80}) {
    CHECK(cw[k - 1] == doctest::Approx(gamma1_ww(s, k).gamma1_hat));
    CHECK(cb[k - 1] == doctest::Approx(gamma1_bmn(s, k).gamma1_hat));
  }
  const auto fit = gamma1_ww(s, 40);
  CHECK(fit.method == Method::WW);
  CHECK(fit.k == 40);
  CHECK(fit.threshold > 0.0);
}

TEST_CASE("estimates concentrate near the true index") {
  const ScenarioSpec spec(Scenario::S1, 0.6, 1.4);
  const auto s = simulate_truncated(spec, 20000, 21);
  CHECK(gamma1_ww(s, 400).gamma1_hat == doctest::Approx(0.6).epsilon(0.15));
  CHECK(gamma1_bmn(s, 400).gamma1_hat == doctest::Approx(0.6).epsilon(0.15));
}

TEST_CASE("k bounds are validated") {
  const ScenarioSpec spec(Scenario::S1, 0.6, 1.4);
  const auto s = simulate_truncated(spec, 50, 1);
  CHECK_THROWS_AS(gamma1_ww(s, 1), std::invalid_argument);
  CHECK_THROWS_AS(gamma1_ww(s, s.size()), std::invalid_argument);
  CHECK_THROWS_AS(gamma1_bmn(s, 1), std::invalid_argument);
  TruncatedSample empty;
  CHECK_THROWS_AS(lynden_bell_cdf(empty), std::invalid_argument);
  CHECK_THROWS_AS(cn(empty, 1.0), std::invalid_argument);
}
