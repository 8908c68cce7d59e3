#ifndef TRUNCTAIL_CMLE_HPP
#define TRUNCTAIL_CMLE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "trunctail/model.hpp"
#include "trunctail/sample.hpp"

namespace trunctail {

/// Instantiate a truncation model G_theta from a flat parameter vector:
/// Burr (gamma2, delta), Frechet (gamma2), Frechet2 (scale, shape).
ParametricModel make_model(Family family, std::span<const double> theta);

std::size_t family_dim(Family family);

/// sum_i [log g_theta(y_i) - log Gbar_theta(x_i)].
/// Returns -inf for parameter vectors where any observation falls outside the
/// support or an intermediate is non-finite; never throws for that.
double conditional_log_likelihood(Family family, std::span<const double> theta,
                                  const TruncatedSample& sample);

struct CmleOptions {
  std::size_t max_evals_per_start = 10000;
  double simplex_tol = 1e-8;  // simplex diameter in log-parameter space
  std::size_t grid_starts = 5;
};

struct CmleFit {
  std::vector<double> theta_hat;
  double log_likelihood = 0.0;
  bool converged = false;
  std::size_t iterations = 0;       // objective evaluations, all starts
  std::size_t n_restarts_used = 0;  // multistart points actually run

  ParametricModel model(Family family) const {
    return make_model(family, theta_hat);
  }
};

/// Conditional maximum likelihood fit of the truncation-model parameters by
/// Nelder-Mead simplex on log-parameters. Without an init, starts from a
/// deterministic log-spaced grid over [0.1, 10] per component and keeps the
/// best final point (ties broken by start index).
CmleFit fit_cmle(const TruncatedSample& sample, Family family,
                 std::optional<std::vector<double>> init = std::nullopt,
                 const CmleOptions& options = {});

}  // namespace trunctail

#endif
