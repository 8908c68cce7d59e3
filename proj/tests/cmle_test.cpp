#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "trunctail/cmle.hpp"
#include "trunctail/errors.hpp"
#include "trunctail/scenario.hpp"

using namespace trunctail;

TEST_CASE("family helpers") {
  CHECK(family_dim(Family::Frechet) == 1);
  CHECK(family_dim(Family::Burr) == 2);
  CHECK(family_dim(Family::Frechet2) == 2);
  const std::array<double, 2> theta{1.4, 0.25};
  const auto m = make_model(Family::Burr, theta);
  CHECK(m.family() == Family::Burr);
  CHECK(m.param(0) == doctest::Approx(1.4));
  CHECK_THROWS_AS(make_model(Family::Frechet, theta), std::invalid_argument);
}

TEST_CASE("conditional log-likelihood matches a hand sum") {
  TruncatedSample s;
  s.pairs = {{0.5, 1.2}, {0.8, 3.0}, {0.2, 0.4}};
  const std::array<double, 1> theta{1.3};
  const auto g = ParametricModel::frechet(1.3);
  double expect = 0.0;
  for (const auto& [x, y] : s.pairs) {
    expect += g.log_density(y) - g.log_survival(x);
  }
  CHECK(conditional_log_likelihood(Family::Frechet, theta, s) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("infeasible parameters yield -inf, not an exception") {
  TruncatedSample s;
  s.pairs = {{0.5, 1.2}};
  const std::array<double, 1> bad{-1.0};
  CHECK(conditional_log_likelihood(Family::Frechet, bad, s) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("cmle recovers the frechet truncation index") {
  const ScenarioSpec spec(Scenario::S2, 0.6, 1.4);
  const auto s = simulate_truncated(spec, 8000, 31);
  const auto fit = fit_cmle(s, Family::Frechet);
  REQUIRE(fit.theta_hat.size() == 1);
  CHECK(fit.converged);
  CHECK(fit.theta_hat[0] == doctest::Approx(1.4).epsilon(0.08));
  CHECK(std::isfinite(fit.log_likelihood));
  CHECK(fit.n_restarts_used >= 1);
}

TEST_CASE("cmle recovers the burr truncation parameters") {
  const ScenarioSpec spec(Scenario::S1, 0.6, 1.4, 0.25);
  const auto s = simulate_truncated(spec, 12000, 33);
  const auto fit = fit_cmle(s, Family::Burr);
  REQUIRE(fit.theta_hat.size() == 2);
  CHECK(fit.theta_hat[0] == doctest::Approx(1.4).epsilon(0.15));
  CHECK(fit.theta_hat[1] == doctest::Approx(0.25).epsilon(0.15));
}

TEST_CASE("an explicit init is honored and validated") {
  const ScenarioSpec spec(Scenario::S2, 0.6, 1.4);
  const auto s = simulate_truncated(spec, 3000, 35);
  const auto fit = fit_cmle(s, Family::Frechet, std::vector<double>{1.0});
  CHECK(fit.n_restarts_used == 1);
  CHECK(fit.theta_hat[0] == doctest::Approx(1.4).epsilon(0.15));
  CHECK_THROWS_AS(fit_cmle(s, Family::Frechet, std::vector<double>{-2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_cmle(s, Family::Frechet, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("multistart result is no worse than any single start") {
  const ScenarioSpec spec(Scenario::S2, 0.6, 1.4);
  const auto s = simulate_truncated(spec, 1000, 37);
  const auto multi = fit_cmle(s, Family::Frechet);
  for (double t0 : {0.1, 1.0, 10.0}) {
    const auto single = fit_cmle(s, Family::Frechet, std::vector<double>{t0});
    CHECK(multi.log_likelihood >= single.log_likelihood - 1e-6);
  }
}

TEST_CASE("tiny samples are rejected") {
  TruncatedSample s;
  s.pairs = {{0.5, 1.2}, {0.8, 3.0}};
  CHECK_THROWS_AS(fit_cmle(s, Family::Frechet), std::invalid_argument);
}
