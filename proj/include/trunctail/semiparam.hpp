#ifndef TRUNCTAIL_SEMIPARAM_HPP
#define TRUNCTAIL_SEMIPARAM_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "trunctail/model.hpp"
#include "trunctail/sample.hpp"
#include "trunctail/tailfit.hpp"

namespace trunctail {

/// Weighted empirical CDF with weights w_i = 1 / Gbar_theta(x_i), normalized
/// so the terminal value is exactly 1.
class SemiparamCdf {
 public:
  /// `weights` aligned with ascending `sorted_x`.
  SemiparamCdf(std::vector<double> sorted_x, std::vector<double> weights);

  double operator()(double x) const;
  double survival(double x) const;

  const std::vector<double>& sorted_x() const { return x_; }
  const std::vector<double>& weights() const { return w_; }
  double total_weight() const { return total_; }
  /// P_n(theta) = n / sum_i w_i.
  double normalizer() const;

 private:
  std::vector<double> x_;
  std::vector<double> w_;
  std::vector<double> cum_;  // prefix sums of w_
  double total_;
};

/// Build the Wang semiparametric CDF from a fitted truncation model.
/// Throws NumericalError (naming the observation) when a weight overflows,
/// which signals gamma1 < gamma2 violated or a wild theta_hat.
SemiparamCdf semiparametric_cdf(const TruncatedSample& sample,
                                const ParametricModel& g_model);

/// Semiparametric tail-index estimator: weighted average of log-spacings over
/// the top k order statistics with weights 1 / Gbar_theta. Fills std_error
/// from asymptotic_variance with gamma2 taken from the model's tail index.
TailFit gamma1_semi(const TruncatedSample& sample,
                    const ParametricModel& g_model, std::size_t k);

/// Low-level form on precomputed weights (aligned with ascending sorted x).
double gamma1_semi_weighted(const std::vector<double>& sorted_x,
                            const std::vector<double>& weights, std::size_t k);

/// Estimates for every k = 1..k_max; entry [k-1] holds the value at k.
std::vector<double> gamma1_semi_curve(const TruncatedSample& sample,
                                      const ParametricModel& g_model,
                                      std::size_t k_max);

/// Tail empirical process D_n on a geometric grid over [1, X_{n:n}/X_{n-k:n}],
/// with its Kolmogorov-Smirnov and Cramer-von Mises statistics.
struct TailProcessCurve {
  std::vector<double> grid;
  std::vector<double> values;
  double ks_stat = 0.0;
  double cvm_stat = 0.0;
};

TailProcessCurve tail_process(const TruncatedSample& sample,
                              const ParametricModel& g_model, std::size_t k,
                              double gamma1_hat, std::size_t grid_size = 512);

/// Grid quadrature of int_1^inf x^{-1} Fbar_n(x T) / Fbar_n(T) dx at
/// T = X_{n-k:n} (midpoint rule in log x on a geometric grid). Equals the
/// semiparametric tail-index estimate up to quadrature error.
double integrated_tail_ratio(const TruncatedSample& sample,
                             const ParametricModel& g_model, std::size_t k,
                             std::size_t grid_size = 512);

/// Limit variance gamma^2 (1+g1/g2)(1+(g1/g2)^2)(1-g1/g2)^3 1(g1<g2),
/// with gamma = g1 g2 / (g1 + g2).
double asymptotic_variance(double gamma1, double gamma2);

/// Normal interval gamma1_hat +/- z_{(1+level)/2} sqrt(sigma^2 / k).
std::pair<double, double> confidence_interval(const TailFit& fit,
                                              double gamma2_hat, double level);

}  // namespace trunctail

#endif
