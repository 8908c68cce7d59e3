#include "trunctail/semiparam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "trunctail/errors.hpp"

namespace trunctail {

namespace {

// Acklam's rational approximation to the standard normal quantile,
// refined with one Halley step (absolute error far below 1e-9).
double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal quantile needs p in (0, 1)");
  }
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425, p_high = 1.0 - p_low;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= p_high) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

struct WeightedSample {
  std::vector<double> x;  // ascending
  std::vector<double> w;  // 1 / Gbar(x_i)
};

WeightedSample build_weights(const TruncatedSample& sample,
                             const ParametricModel& g_model) {
  if (sample.size() == 0) throw std::invalid_argument("empty sample");
  WeightedSample ws;
  ws.x = sample.xs();
  std::sort(ws.x.begin(), ws.x.end());
  ws.w.resize(ws.x.size());
  for (std::size_t i = 0; i < ws.x.size(); ++i) {
    const double lw = -g_model.log_survival(ws.x[i]);
    if (lw > 700.0) {
      throw NumericalError(
          "inverse-probability weight overflows at observation x = " +
          std::to_string(ws.x[i]) +
          " (truncation survival underflows; check the fitted model)");
    }
    ws.w[i] = std::exp(lw);
  }
  return ws;
}

}  // namespace

SemiparamCdf::SemiparamCdf(std::vector<double> sorted_x,
                           std::vector<double> weights)
    : x_(std::move(sorted_x)), w_(std::move(weights)) {
  if (x_.empty() || x_.size() != w_.size()) {
    throw std::invalid_argument("SemiparamCdf needs matching non-empty arrays");
  }
  if (!std::is_sorted(x_.begin(), x_.end())) {
    throw std::invalid_argument("SemiparamCdf support must be ascending");
  }
  cum_.resize(w_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!(std::isfinite(w_[i]) && w_[i] > 0.0)) {
      throw std::invalid_argument("SemiparamCdf weights must be positive");
    }
    acc += w_[i];
    cum_[i] = acc;
  }
  total_ = acc;
}

double SemiparamCdf::operator()(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - x_.begin()) - 1] / total_;
}

double SemiparamCdf::survival(double x) const { return 1.0 - (*this)(x); }

double SemiparamCdf::normalizer() const {
  return static_cast<double>(x_.size()) / total_;
}

SemiparamCdf semiparametric_cdf(const TruncatedSample& sample,
                                const ParametricModel& g_model) {
  auto ws = build_weights(sample, g_model);
  return SemiparamCdf(std::move(ws.x), std::move(ws.w));
}

double gamma1_semi_weighted(const std::vector<double>& sorted_x,
                            const std::vector<double>& weights, std::size_t k) {
  const std::size_t n = sorted_x.size();
  if (n == 0 || n != weights.size()) {
    throw std::invalid_argument("x and weight arrays must match and be non-empty");
  }
  if (k < 1 || k >= n) {
    throw std::invalid_argument("sample fraction k must satisfy 1 <= k < n");
  }
  const double log_t = std::log(sorted_x[n - k - 1]);
  double num = 0.0, den = 0.0;
  for (std::size_t i = n - k; i < n; ++i) {
    num += weights[i] * (std::log(sorted_x[i]) - log_t);
    den += weights[i];
  }
  if (!(den > 0.0)) throw NumericalError("semiparametric weights sum to zero");
  return num / den;
}

TailFit gamma1_semi(const TruncatedSample& sample,
                    const ParametricModel& g_model, std::size_t k) {
  if (k < 2 || k >= sample.size()) {
    throw std::invalid_argument("sample fraction k must satisfy 2 <= k < n");
  }
  auto ws = build_weights(sample, g_model);
  TailFit fit;
  fit.method = Method::Semi;
  fit.k = k;
  fit.threshold = ws.x[ws.x.size() - k - 1];
  fit.gamma1_hat = gamma1_semi_weighted(ws.x, ws.w, k);
  const int np = g_model.n_params();
  fit.theta_hat.emplace(static_cast<std::size_t>(np));
  for (int i = 0; i < np; ++i) {
    (*fit.theta_hat)[static_cast<std::size_t>(i)] = g_model.param(i);
  }
  const double var = asymptotic_variance(fit.gamma1_hat, g_model.tail_index());
  fit.std_error = std::sqrt(var / static_cast<double>(k));
  return fit;
}

std::vector<double> gamma1_semi_curve(const TruncatedSample& sample,
                                      const ParametricModel& g_model,
                                      std::size_t k_max) {
  const std::size_t n = sample.size();
  auto ws = build_weights(sample, g_model);
  const std::size_t k_top = std::min(k_max, n > 0 ? n - 1 : 0);
  std::vector<double> out(k_max, std::numeric_limits<double>::quiet_NaN());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 1; k <= k_top; ++k) {
    const std::size_t j = n - k;  // index of X_{n-k+1:n}
    num += ws.w[j] * std::log(ws.x[j]);
    den += ws.w[j];
    out[k - 1] = num / den - std::log(ws.x[n - k - 1]);
  }
  return out;
}

TailProcessCurve tail_process(const TruncatedSample& sample,
                              const ParametricModel& g_model, std::size_t k,
                              double gamma1_hat, std::size_t grid_size) {
  const std::size_t n = sample.size();
  if (k < 2 || k >= n) {
    throw std::invalid_argument("sample fraction k must satisfy 2 <= k < n");
  }
  if (!(gamma1_hat > 0.0)) {
    throw std::invalid_argument("gamma1_hat must be positive");
  }
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");

  const SemiparamCdf cdf = semiparametric_cdf(sample, g_model);
  const auto& xs = cdf.sorted_x();
  const double t = xs[n - k - 1];
  const double tail_t = cdf.survival(t);
  if (!(tail_t > 0.0)) {
    throw NumericalError("tail process undefined: survival vanishes at the "
                         "threshold");
  }
  const double x_hi = xs.back() / t;

  TailProcessCurve curve;
  curve.grid.resize(grid_size);
  curve.values.resize(grid_size);
  const double log_hi = std::log(x_hi);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double s =
        log_hi * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    const double x = std::exp(s);
    const double ratio = cdf.survival(x * t) / tail_t;
    curve.grid[i] = x;
    curve.values[i] = ratio - std::pow(x, -1.0 / gamma1_hat);
    curve.ks_stat = std::max(curve.ks_stat, std::fabs(curve.values[i]));
  }

  // Cramer-von Mises in the u = x^{-1/gamma1} scale, midpoint rule on a
  // uniform u-grid from the grid floor up to u = 1.
  const double u_lo = std::pow(x_hi, -1.0 / gamma1_hat);
  const double du = (1.0 - u_lo) / static_cast<double>(grid_size);
  double cvm = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double u = u_lo + (static_cast<double>(i) + 0.5) * du;
    const double x = std::pow(u, -gamma1_hat);
    const double d = cdf.survival(x * t) / tail_t - u;
    cvm += d * d * du;
  }
  curve.cvm_stat = cvm;
  return curve;
}

double integrated_tail_ratio(const TruncatedSample& sample,
                             const ParametricModel& g_model, std::size_t k,
                             std::size_t grid_size) {
  const std::size_t n = sample.size();
  if (k < 2 || k >= n) {
    throw std::invalid_argument("sample fraction k must satisfy 2 <= k < n");
  }
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
  const SemiparamCdf cdf = semiparametric_cdf(sample, g_model);
  const auto& xs = cdf.sorted_x();
  const double t = xs[n - k - 1];
  const double tail_t = cdf.survival(t);
  if (!(tail_t > 0.0)) {
    throw NumericalError("integral undefined: survival vanishes at the "
                         "threshold");
  }
  // With s = log x the integrand becomes Fbar_n(T e^s) / Fbar_n(T); it is
  // zero beyond the top order statistic, so the range is [0, log(x_max/T)].
  const double s_hi = std::log(xs.back() / t);
  const double ds = s_hi / static_cast<double>(grid_size);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double s = (static_cast<double>(i) + 0.5) * ds;
    acc += cdf.survival(t * std::exp(s)) / tail_t;
  }
  return acc * ds;
}

double asymptotic_variance(double gamma1, double gamma2) {
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) {
    throw std::invalid_argument("tail indices must be positive");
  }
  if (gamma1 >= gamma2) return 0.0;
  const double gamma = gamma1 * gamma2 / (gamma1 + gamma2);
  const double r = gamma1 / gamma2;
  const double omr = 1.0 - r;
  return gamma * gamma * (1.0 + r) * (1.0 + r * r) * omr * omr * omr;
}

std::pair<double, double> confidence_interval(const TailFit& fit,
                                              double gamma2_hat, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  if (fit.k == 0) throw std::invalid_argument("fit has no sample fraction");
  const double z = inverse_normal_cdf(0.5 * (1.0 + level));
  const double var = asymptotic_variance(fit.gamma1_hat, gamma2_hat);
  const double hw = z * std::sqrt(var / static_cast<double>(fit.k));
  return {fit.gamma1_hat - hw, fit.gamma1_hat + hw};
}

}  // namespace trunctail
