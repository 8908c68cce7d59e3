#ifndef TRUNCTAIL_HARNESS_HPP
#define TRUNCTAIL_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trunctail/scenario.hpp"
#include "trunctail/tailfit.hpp"

namespace trunctail {

/// Monte Carlo study configuration. Exactly one of `gamma2` / `p` must be set
/// (an explicit gamma2 wins when both are).
struct ScenarioConfig {
  Scenario scenario = Scenario::S1;
  double gamma1 = 0.6;
  std::optional<double> p;
  std::optional<double> gamma2;
  double delta = 0.25;
  std::size_t n_draw = 300;  // pre-truncation draws per replication
  std::size_t replications = 1000;
  std::size_t k_min = 2;
  std::size_t k_max = 120;
  std::uint64_t master_seed = 20240101;
  double theta_exponent = 0.3;
  // Floor of the sample-fraction scan. The stability criterion is degenerate
  // at tiny k (the objective vanishes as the prefix shrinks), so scanning
  // from 2 collapses k* to the left edge; a floor in the teens keeps the
  // selection on the stable part of the curve at n of a few hundred.
  std::size_t k_star_scan_min = 15;
  std::vector<Method> estimators = {Method::Semi, Method::BMN, Method::WW};
  bool strict = false;  // abort on non-converged CMLE instead of flagging
};

/// Resolve the truncation-model tail index: explicit gamma2, else solved from
/// the target truncation probability p. Throws invalid_argument when neither
/// is given, NumericalError when p is unreachable.
double resolve_gamma2(const ScenarioConfig& config);

struct EstimatorSummary {
  Method method = Method::Semi;
  // Arrays over the k-grid [k_min, k_max], entry [k - k_min].
  std::vector<double> abias;
  std::vector<double> rmse;
  std::vector<double> scaled_var;      // k * var(gamma_hat(k)) across reps
  std::vector<std::size_t> included;   // replications contributing at this k
  std::vector<std::size_t> misses;     // undefined-estimate count at this k
  // Per-replication selected sample fraction and estimate (k* = 0 and NaN
  // when selection or the whole replication failed for this estimator).
  std::vector<std::size_t> k_star;
  std::vector<double> gamma_at_k_star;
  // Aggregates over successful replications.
  std::size_t k_star_mode = 0;
  double k_star_mean = 0.0;
  double mean_at_k_star = 0.0;
  double abias_at_k_star = 0.0;
  double rmse_at_k_star = 0.0;
  std::size_t selection_failures = 0;
};

struct MonteCarloSummary {
  ScenarioConfig config;
  double gamma2_resolved = 0.0;
  std::vector<EstimatorSummary> estimators;  // order of config.estimators
  std::size_t replication_failures = 0;  // simulation/CMLE hard failures
  std::size_t cmle_nonconverged = 0;
};

/// Run the full study, parallel over replications when OpenMP is enabled.
/// Per-replication RNG streams are derived from (master_seed, index) and the
/// reduction is ordered by index, so the output is schedule-independent.
MonteCarloSummary run_scenario(const ScenarioConfig& config);

/// Single-threaded reference producing bitwise-identical summaries.
MonteCarloSummary run_scenario_serial(const ScenarioConfig& config);

/// CSV with header "estimator,k,abias,rmse", rows sorted by (estimator, k),
/// numbers at 6 significant digits. Byte-identical for equal configs.
std::string csv_string(const MonteCarloSummary& summary);
void emit_csv(const MonteCarloSummary& summary, const std::string& path);

}  // namespace trunctail

#endif
