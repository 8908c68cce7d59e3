#include "trunctail/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "trunctail/cmle.hpp"
#include "trunctail/errors.hpp"
#include "trunctail/nonparam.hpp"
#include "trunctail/rng.hpp"
#include "trunctail/selection.hpp"
#include "trunctail/semiparam.hpp"

namespace trunctail {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RepResult {
  bool hard_failure = false;    // simulation unusable for every estimator
  bool cmle_nonconverged = false;
  // One slot per configured estimator: estimate per grid k (NaN = miss),
  // selected k* (0 = selection failed) and the estimate there.
  std::vector<std::vector<double>> values;
  std::vector<std::size_t> k_star;
  std::vector<double> at_k_star;
};

void validate_config(const ScenarioConfig& c) {
  if (c.replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (c.k_min < 2) throw std::invalid_argument("k_min must be >= 2");
  if (c.k_min > c.k_max) throw std::invalid_argument("k_min must not exceed k_max");
  if (c.k_star_scan_min < 2) {
    throw std::invalid_argument("k_star_scan_min must be >= 2");
  }
  if (c.n_draw < 4) throw std::invalid_argument("n_draw must be >= 4");
  if (!(c.theta_exponent >= 0.0)) {
    throw std::invalid_argument("theta_exponent must be >= 0");
  }
  if (c.estimators.empty()) {
    throw std::invalid_argument("estimator set must not be empty");
  }
}

RepResult run_replication(const ScenarioConfig& c, const ScenarioSpec& spec,
                          std::size_t rep) {
  const std::size_t n_est = c.estimators.size();
  const std::size_t grid = c.k_max - c.k_min + 1;
  RepResult res;
  res.values.assign(n_est, std::vector<double>(grid, kNaN));
  res.k_star.assign(n_est, 0);
  res.at_k_star.assign(n_est, kNaN);

  RngStream rng = RngStream::substream(c.master_seed, rep);
  const TruncatedSample sample = simulate_truncated(spec, c.n_draw, rng);
  const std::size_t n = sample.size();
  if (n < std::max<std::size_t>(c.k_min + 2, 10)) {
    res.hard_failure = true;
    return res;
  }

  const bool wants_semi =
      std::find(c.estimators.begin(), c.estimators.end(), Method::Semi) !=
      c.estimators.end();
  std::optional<ParametricModel> g_model;
  if (wants_semi) {
    try {
      const CmleFit fit = fit_cmle(sample, truncation_family(c.scenario));
      res.cmle_nonconverged = !fit.converged;
      if (!(c.strict && !fit.converged)) {
        g_model = fit.model(truncation_family(c.scenario));
      }
    } catch (const NumericalError&) {
      // semi stays all-miss for this replication
    }
  }

  for (std::size_t e = 0; e < n_est; ++e) {
    std::vector<double> curve;
    try {
      switch (c.estimators[e]) {
        case Method::Semi:
          if (!g_model) continue;
          curve = gamma1_semi_curve(sample, *g_model, c.k_max);
          break;
        case Method::BMN:
          curve = gamma1_bmn_curve(sample, c.k_max);
          break;
        case Method::WW:
          curve = gamma1_ww_curve(sample, c.k_max);
          break;
      }
    } catch (const NumericalError&) {
      continue;
    }
    for (std::size_t k = c.k_min; k <= c.k_max; ++k) {
      res.values[e][k - c.k_min] = curve[k - 1];
    }
    if (c.k_star_scan_min <= c.k_max) {
      try {
        const KStarResult sel = thomas_reiss_kstar(curve, c.k_star_scan_min,
                                                   c.k_max, c.theta_exponent);
        res.k_star[e] = sel.k_star;
        res.at_k_star[e] = sel.gamma1_hat;
      } catch (const NumericalError&) {
        // selection failure recorded as k* = 0
      } catch (const std::invalid_argument&) {
        // scan window empty for this sample size
      }
    }
  }
  return res;
}

MonteCarloSummary aggregate(const ScenarioConfig& c, double gamma2,
                            const std::vector<RepResult>& reps) {
  const std::size_t n_est = c.estimators.size();
  const std::size_t grid = c.k_max - c.k_min + 1;

  MonteCarloSummary summary;
  summary.config = c;
  summary.gamma2_resolved = gamma2;
  summary.estimators.resize(n_est);

  for (const auto& r : reps) {
    if (r.hard_failure) ++summary.replication_failures;
    if (r.cmle_nonconverged) ++summary.cmle_nonconverged;
  }

  for (std::size_t e = 0; e < n_est; ++e) {
    EstimatorSummary& es = summary.estimators[e];
    es.method = c.estimators[e];
    es.abias.assign(grid, kNaN);
    es.rmse.assign(grid, kNaN);
    es.scaled_var.assign(grid, kNaN);
    es.included.assign(grid, 0);
    es.misses.assign(grid, 0);
    es.k_star.reserve(reps.size());
    es.gamma_at_k_star.reserve(reps.size());

    for (std::size_t j = 0; j < grid; ++j) {
      double sum = 0.0, sumsq = 0.0, sse = 0.0;
      std::size_t m = 0;
      for (const auto& r : reps) {
        const double v = r.values[e][j];
        if (!std::isfinite(v)) continue;
        ++m;
        sum += v;
        sumsq += v * v;
        const double d = v - c.gamma1;
        sse += d * d;
      }
      es.included[j] = m;
      es.misses[j] = reps.size() - m;
      if (m > 0) {
        const double mean = sum / static_cast<double>(m);
        es.abias[j] = std::fabs(mean - c.gamma1);
        es.rmse[j] = std::sqrt(sse / static_cast<double>(m));
        if (m > 1) {
          const double var =
              std::max(0.0, sumsq / static_cast<double>(m) - mean * mean);
          es.scaled_var[j] = static_cast<double>(c.k_min + j) * var;
        }
      }
    }

    std::map<std::size_t, std::size_t> freq;
    double ksum = 0.0, gsum = 0.0, gsse = 0.0;
    std::size_t m = 0;
    for (const auto& r : reps) {
      es.k_star.push_back(r.k_star[e]);
      es.gamma_at_k_star.push_back(r.at_k_star[e]);
      if (r.k_star[e] == 0 || !std::isfinite(r.at_k_star[e])) continue;
      ++m;
      ++freq[r.k_star[e]];
      ksum += static_cast<double>(r.k_star[e]);
      gsum += r.at_k_star[e];
      const double d = r.at_k_star[e] - c.gamma1;
      gsse += d * d;
    }
    es.selection_failures = reps.size() - m;
    if (m > 0) {
      std::size_t mode = 0, best = 0;
      for (const auto& [k, cnt] : freq) {
        if (cnt > best) {
          best = cnt;
          mode = k;
        }
      }
      es.k_star_mode = mode;
      es.k_star_mean = ksum / static_cast<double>(m);
      es.mean_at_k_star = gsum / static_cast<double>(m);
      es.abias_at_k_star = std::fabs(es.mean_at_k_star - c.gamma1);
      es.rmse_at_k_star = std::sqrt(gsse / static_cast<double>(m));
    } else {
      es.k_star_mean = kNaN;
      es.mean_at_k_star = kNaN;
      es.abias_at_k_star = kNaN;
      es.rmse_at_k_star = kNaN;
    }
  }
  return summary;
}

MonteCarloSummary run_impl(const ScenarioConfig& config, bool parallel) {
  validate_config(config);
  const double gamma2 = resolve_gamma2(config);
  const ScenarioSpec spec(config.scenario, config.gamma1, gamma2, config.delta);

  std::vector<RepResult> reps(config.replications);
  const long total = static_cast<long>(config.replications);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long r = 0; r < total; ++r) {
    reps[static_cast<std::size_t>(r)] =
        run_replication(config, spec, static_cast<std::size_t>(r));
  }
  return aggregate(config, gamma2, reps);
}

}  // namespace

double resolve_gamma2(const ScenarioConfig& config) {
  if (config.gamma2) {
    if (!(*config.gamma2 > config.gamma1)) {
      throw std::invalid_argument("gamma2 must exceed gamma1");
    }
    return *config.gamma2;
  }
  if (config.p) {
    return solve_gamma2(config.scenario, *config.p, config.gamma1,
                        config.delta);
  }
  throw std::invalid_argument("config needs either gamma2 or p");
}

MonteCarloSummary run_scenario(const ScenarioConfig& config) {
  return run_impl(config, true);
}

MonteCarloSummary run_scenario_serial(const ScenarioConfig& config) {
  return run_impl(config, false);
}

std::string csv_string(const MonteCarloSummary& summary) {
  std::vector<std::size_t> order(summary.estimators.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return method_name(summary.estimators[a].method) <
           method_name(summary.estimators[b].method);
  });

  std::string out = "estimator,k,abias,rmse\n";
  char buf[128];
  for (std::size_t i : order) {
    const EstimatorSummary& es = summary.estimators[i];
    const std::string name = method_name(es.method);
    for (std::size_t j = 0; j < es.abias.size(); ++j) {
      const std::size_t k = summary.config.k_min + j;
      std::snprintf(buf, sizeof(buf), "%s,%zu,%.6g,%.6g\n", name.c_str(), k,
                    es.abias[j], es.rmse[j]);
      out += buf;
    }
  }
  return out;
}

void emit_csv(const MonteCarloSummary& summary, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << csv_string(summary);
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace trunctail
