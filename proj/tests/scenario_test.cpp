#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "trunctail/errors.hpp"
#include "trunctail/scenario.hpp"

using namespace trunctail;

TEST_CASE("scenario parsing round-trips") {
  for (auto s : {Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4}) {
    CHECK(parse_scenario(scenario_name(s)) == s);
  }
  CHECK_THROWS_AS(parse_scenario("s9"), std::invalid_argument);
  CHECK(truncation_family(Scenario::S1) == Family::Burr);
  CHECK(truncation_family(Scenario::S2) == Family::Frechet);
  CHECK(truncation_family(Scenario::S3) == Family::Burr);
  CHECK(truncation_family(Scenario::S4) == Family::Frechet);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ScenarioSpec(Scenario::S1, 0.6, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(ScenarioSpec(Scenario::S1, -1.0, 1.4), std::invalid_argument);
  CHECK_THROWS_AS(ScenarioSpec(Scenario::S1, 0.6, 1.4, 0.0),
                  std::invalid_argument);
}

TEST_CASE("truncation probability against independent quadrature values") {
  // Burr/Burr with equal second shape has the closed form g2 / (g1 + g2).
  CHECK(truncation_probability(Scenario::S1, 0.6, 1.4) ==
        doctest::Approx(0.7).epsilon(1e-7));
  CHECK(truncation_probability(Scenario::S1, 0.8, 7.2) ==
        doctest::Approx(0.9).epsilon(1e-7));
  // Frozen values from an independent adaptive quadrature.
  CHECK(truncation_probability(Scenario::S2, 0.6, 1.4) ==
        doctest::Approx(0.55494363).epsilon(1e-6));
  CHECK(truncation_probability(Scenario::S2, 0.6, 5.4) ==
        doctest::Approx(0.60892252).epsilon(1e-6));
  CHECK(truncation_probability(Scenario::S3, 0.6, 1.4) ==
        doctest::Approx(0.73630751).epsilon(1e-6));
  CHECK(truncation_probability(Scenario::S4, 0.6, 1.4) ==
        doctest::Approx(0.52454489).epsilon(1e-6));
}

TEST_CASE("probability is monotone in gamma2") {
  double prev = 0.0;
  for (double g2 : {0.7, 1.0, 1.4, 2.5, 5.0, 20.0}) {
    const double p = truncation_probability(Scenario::S2, 0.6, g2);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("solve_gamma2 hits the calibration anchors") {
  CHECK(solve_gamma2(Scenario::S1, 0.9, 0.6) ==
        doctest::Approx(5.4).epsilon(1e-3));
  CHECK(solve_gamma2(Scenario::S1, 0.9, 0.8) ==
        doctest::Approx(7.2).epsilon(1e-3));
  CHECK(solve_gamma2(Scenario::S2, 0.55, 0.6) ==
        doctest::Approx(1.2885566).epsilon(1e-3));
  CHECK(solve_gamma2(Scenario::S2, 0.55, 0.8) ==
        doctest::Approx(1.7180754).epsilon(1e-3));
  CHECK(solve_gamma2(Scenario::S4, 0.55, 0.6) ==
        doctest::Approx(1.9299684).epsilon(1e-3));
}

TEST_CASE("solve_gamma2 validates and reports unreachable targets") {
  CHECK_THROWS_AS(solve_gamma2(Scenario::S1, 0.5, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(solve_gamma2(Scenario::S1, 1.0, 0.6), std::invalid_argument);
  // The Frechet/Frechet retention saturates near 1 - 1/e.
  CHECK_THROWS_AS(solve_gamma2(Scenario::S2, 0.9, 0.6), NumericalError);
  // Frechet target under Burr truncation is already above 0.55 at the
  // bracket's lower edge.
  CHECK_THROWS_AS(solve_gamma2(Scenario::S3, 0.55, 0.6), NumericalError);
}

TEST_CASE("solved gamma2 reproduces the target probability") {
  const double g2 = solve_gamma2(Scenario::S4, 0.55, 0.6);
  CHECK(truncation_probability(Scenario::S4, 0.6, g2) ==
        doctest::Approx(0.55).epsilon(1e-5));
}

TEST_CASE("simulation is deterministic and respects truncation") {
  const ScenarioSpec spec(Scenario::S1, 0.6, 1.4);
  const auto a = simulate_truncated(spec, 500, 123);
  const auto b = simulate_truncated(spec, 500, 123);
  const auto c = simulate_truncated(spec, 500, 124);
  REQUIRE(a.size() == b.size());
  CHECK(a.pairs == b.pairs);
  CHECK(a.pairs != c.pairs);
  CHECK(a.n_drawn == 500);
  CHECK(a.size() < 500);
  for (const auto& [x, y] : a.pairs) {
    CHECK(x <= y);
    CHECK(x > 0.0);
  }
}

TEST_CASE("observed fraction approaches the truncation probability") {
  const ScenarioSpec spec(Scenario::S2, 0.6, 1.4);
  const auto s = simulate_truncated(spec, 200000, 5);
  const double retention =
      static_cast<double>(s.size()) / static_cast<double>(s.n_drawn);
  CHECK(retention == doctest::Approx(0.55494363).epsilon(0.01));
}
