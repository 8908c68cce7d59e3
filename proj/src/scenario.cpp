#include "trunctail/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "trunctail/errors.hpp"

namespace trunctail {

Scenario parse_scenario(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), ::tolower);
  if (n == "s1") return Scenario::S1;
  if (n == "s2") return Scenario::S2;
  if (n == "s3") return Scenario::S3;
  if (n == "s4") return Scenario::S4;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    case Scenario::S3: return "S3";
    case Scenario::S4: return "S4";
  }
  return "?";
}

Family truncation_family(Scenario s) {
  return (s == Scenario::S1 || s == Scenario::S3) ? Family::Burr
                                                  : Family::Frechet;
}

namespace {

ParametricModel make_target(Scenario s, double g1, double d) {
  return (s == Scenario::S1 || s == Scenario::S4)
             ? ParametricModel::burr(g1, d)
             : ParametricModel::frechet(g1);
}

ParametricModel make_truncation(Scenario s, double g2, double d) {
  return truncation_family(s) == Family::Burr ? ParametricModel::burr(g2, d)
                                              : ParametricModel::frechet(g2);
}

// Adaptive Simpson on [a,b] with absolute tolerance.
struct AdaptiveSimpson {
  const std::function<double(double)>& f;
  int evals = 0;
  int max_evals = 200000;

  double run(double a, double b, double tol) {
    const double fa = eval(a), fb = eval(b), fm = eval(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol, 50);
  }

  double eval(double x) {
    if (++evals > max_evals) {
      throw NumericalError("quadrature did not converge (evaluation budget " +
                           std::to_string(max_evals) + " exhausted)");
    }
    return f(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = eval(0.5 * (a + m)), rm = eval(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
    const double err = left + right - whole;
    if (std::fabs(err) <= 15.0 * tol) {
      return left + right + err / 15.0;
    }
    if (depth <= 0) {
      // The split estimate is accepted once the residual is at rounding
      // level; anything larger at the depth limit is a genuine failure.
      if (std::fabs(err) < 1e-9) return left + right;
      throw NumericalError(
          "quadrature did not converge (max refinement depth reached near x=" +
          std::to_string(m) + ", err=" + std::to_string(err) + ")");
    }
    // Keep the per-interval tolerance above rounding noise so that flat
    // stretches of the integrand terminate.
    const double child_tol = std::max(0.5 * tol, 1e-14);
    return recurse(a, m, fa, lm, fm, left, child_tol, depth - 1) +
           recurse(m, b, fm, rm, fb, right, child_tol, depth - 1);
  }
};

}  // namespace

ScenarioSpec::ScenarioSpec(Scenario s, double g1, double g2, double d)
    : scenario(s), gamma1(g1), gamma2(g2), delta(d) {
  if (!(g1 > 0.0) || !(g2 > 0.0) || !(d > 0.0)) {
    throw std::invalid_argument("scenario parameters must be positive");
  }
  if (!(g1 < g2)) {
    std::ostringstream os;
    os << "scenario requires gamma1 < gamma2, got gamma1=" << g1
       << " gamma2=" << g2;
    throw std::invalid_argument(os.str());
  }
}

ParametricModel ScenarioSpec::target_model() const {
  return make_target(scenario, gamma1, delta);
}

ParametricModel ScenarioSpec::truncation_model() const {
  return make_truncation(scenario, gamma2, delta);
}

double truncation_probability(Scenario s, double gamma1, double gamma2,
                              double delta) {
  const ParametricModel F = make_target(s, gamma1, delta);
  const ParametricModel G = make_truncation(s, gamma2, delta);
  // Probability substitution w = G^{-1}(v): the integrand is bounded and
  // monotone on (0,1), so no upper cutoff is needed for the improper integral.
  const std::function<double(double)> integrand = [&](double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    const double q = G.quantile(v);
    if (!std::isfinite(q)) return 1.0;  // quantile overflow: cdf limit is 1
    return F.cdf(q);
  };
  AdaptiveSimpson quad{integrand};
  const double p = quad.run(0.0, 1.0, 1e-8);
  return std::clamp(p, 0.0, 1.0);
}

double truncation_probability(const ScenarioSpec& spec) {
  return truncation_probability(spec.scenario, spec.gamma1, spec.gamma2,
                                spec.delta);
}

double solve_gamma2(Scenario s, double p_target, double gamma1, double delta) {
  if (!(p_target > 0.5 && p_target < 1.0)) {
    throw std::invalid_argument("p_target must lie in (0.5, 1)");
  }
  if (!(gamma1 > 0.0)) throw std::invalid_argument("gamma1 must be positive");

  const double lo_edge = gamma1 * (1.0 + 1e-9);
  const double hi_edge = 1e3;
  constexpr int kGridPoints = 25;

  auto p_of = [&](double g2) {
    return truncation_probability(s, gamma1, g2, delta);
  };

  // Log-spaced scan: locate a sign change and verify p is nondecreasing.
  double prev_g = lo_edge, prev_p = p_of(lo_edge);
  if (prev_p >= p_target) {
    std::ostringstream os;
    os << "p_target=" << p_target << " unreachable for " << scenario_name(s)
       << " with gamma1=" << gamma1 << ": already p=" << prev_p
       << " at the bracket edge gamma2=gamma1 (solution would need gamma2 <= "
          "gamma1)";
    throw NumericalError(os.str());
  }
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int i = 1; i < kGridPoints && !found; ++i) {
    const double g =
        lo_edge * std::pow(hi_edge / lo_edge,
                           static_cast<double>(i) / (kGridPoints - 1));
    const double p = p_of(g);
    if (p < prev_p - 1e-9) {
      throw NumericalError(
          "truncation probability is not monotone in gamma2 on the bracket");
    }
    if (p >= p_target) {
      lo = prev_g;
      hi = g;
      found = true;
    }
    prev_g = g;
    prev_p = p;
  }
  if (!found) {
    std::ostringstream os;
    os << "p_target=" << p_target << " unreachable for " << scenario_name(s)
       << " with gamma1=" << gamma1 << ": p(gamma2=" << hi_edge
       << ")=" << prev_p;
    throw NumericalError(os.str());
  }
  // Bisection on p(gamma2) - p_target.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double p = p_of(mid);
    if (std::fabs(p - p_target) < 1e-6) return mid;
    (p < p_target ? lo : hi) = mid;
  }
  throw NumericalError("solve_gamma2: bisection did not reach tolerance");
}

TruncatedSample simulate_truncated(const ScenarioSpec& spec, std::size_t n_draw,
                                   RngStream& rng) {
  if (n_draw < 1) throw std::invalid_argument("n_draw must be >= 1");
  const ParametricModel F = spec.target_model();
  const ParametricModel G = spec.truncation_model();
  TruncatedSample out;
  out.n_drawn = n_draw;
  for (std::size_t i = 0; i < n_draw; ++i) {
    const double x = F.sample(rng);
    const double y = G.sample(rng);
    if (x <= y) out.pairs.emplace_back(x, y);
  }
  return out;
}

TruncatedSample simulate_truncated(const ScenarioSpec& spec, std::size_t n_draw,
                                   std::uint64_t seed) {
  RngStream rng(seed);
  TruncatedSample out = simulate_truncated(spec, n_draw, rng);
  out.seed = seed;
  return out;
}

}  // namespace trunctail
