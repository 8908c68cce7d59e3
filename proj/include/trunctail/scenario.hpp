#ifndef TRUNCTAIL_SCENARIO_HPP
#define TRUNCTAIL_SCENARIO_HPP

#include <cstdint>
#include <string>

#include "trunctail/model.hpp"
#include "trunctail/sample.hpp"

namespace trunctail {

/// Simulation scenario: which families play the target F and the truncation G.
///   S1  Burr(g1, d)  truncated by Burr(g2, d)
///   S2  Frechet(g1)  truncated by Frechet(g2)
///   S3  Frechet(g1)  truncated by Burr(g2, d)
///   S4  Burr(g1, d)  truncated by Frechet(g2)
enum class Scenario { S1, S2, S3, S4 };

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);

/// Family of the truncation distribution G under a scenario.
Family truncation_family(Scenario s);

struct ScenarioSpec {
  Scenario scenario;
  double gamma1;
  double gamma2;
  double delta = 0.25;

  /// Validates positivity and gamma1 < gamma2.
  ScenarioSpec(Scenario s, double g1, double g2, double d = 0.25);

  ParametricModel target_model() const;      // F
  ParametricModel truncation_model() const;  // G
};

/// p = P(X <= Y) = integral of F dG, by adaptive quadrature of
/// v -> F(G^{-1}(v)) over (0,1). Absolute error target 1e-8.
double truncation_probability(Scenario s, double gamma1, double gamma2,
                              double delta = 0.25);
double truncation_probability(const ScenarioSpec& spec);

/// Solve truncation_probability(gamma2) = p_target for gamma2, bracketing over
/// (gamma1, 1e3] then bisecting until |p - p_target| < 1e-6. Monotonicity of p
/// in gamma2 is checked on the scanned grid. Throws NumericalError when
/// p_target is unreachable in the bracket.
double solve_gamma2(Scenario s, double p_target, double gamma1,
                    double delta = 0.25);

/// Draw N independent pairs (X from F, Y from G) and retain those with X <= Y.
TruncatedSample simulate_truncated(const ScenarioSpec& spec, std::size_t n_draw,
                                   std::uint64_t seed);
TruncatedSample simulate_truncated(const ScenarioSpec& spec, std::size_t n_draw,
                                   RngStream& rng);

}  // namespace trunctail

#endif
