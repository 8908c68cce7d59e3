#include "trunctail/nonparam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "trunctail/errors.hpp"

namespace trunctail {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sorted view of a sample with the risk-set process evaluated at each
// observed x, plus the product-limit values there. Built once, O(n log n).
struct SortedCurves {
  std::vector<double> x;    // ascending, stable in original index on ties
  std::vector<double> c;    // C_n at each x
  std::vector<double> lb;   // Lynden-Bell CDF value at x (right-continuous)
  std::vector<double> wf;   // Woodroofe CDF value at x
  double lb_lower, wf_lower;
};

SortedCurves build_curves(const TruncatedSample& sample) {
  const std::size_t n = sample.size();
  if (n == 0) throw std::invalid_argument("empty sample");

  SortedCurves sc;
  sc.x = sample.xs();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sc.x[a] < sc.x[b];
  });
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = sc.x[order[i]];
  sc.x = std::move(xs);

  std::vector<double> ys = sample.ys();
  std::sort(ys.begin(), ys.end());

  // C_n(x) = (#{x_j <= x} - #{y_j < x}) / n; valid because x_j <= y_j.
  sc.c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto above =
        std::upper_bound(sc.x.begin(), sc.x.end(), sc.x[i]) - sc.x.begin();
    const auto below = std::lower_bound(ys.begin(), ys.end(), sc.x[i]) - ys.begin();
    sc.c[i] = static_cast<double>(above - below) / static_cast<double>(n);
  }

  sc.lb.resize(n);
  sc.wf.resize(n);
  double plb = 1.0, pwf = 1.0;
  for (std::size_t j = n; j-- > 0;) {
    sc.lb[j] = plb;  // product over strictly larger points
    sc.wf[j] = pwf;
    const double u = 1.0 / (static_cast<double>(n) * sc.c[j]);
    plb *= std::max(0.0, 1.0 - u);
    pwf *= std::exp(-u);
  }
  sc.lb_lower = plb;
  sc.wf_lower = pwf;
  return sc;
}

std::vector<double> gamma_curve(const SortedCurves& sc,
                                const std::vector<double>& fv,
                                std::size_t k_max) {
  const std::size_t n = sc.x.size();
  const std::size_t k_top = std::min(k_max, n > 0 ? n - 1 : 0);
  std::vector<double> out(k_max, kNaN);
  // Jump of the product-limit CDF at x_(j) is F(x_(j)) / (n C_n(x_(j))).
  double sum_wlog = 0.0, sum_w = 0.0;
  for (std::size_t k = 1; k <= k_top; ++k) {
    const std::size_t j = n - k;  // index of X_{n-k+1:n}
    const double w = fv[j] / (static_cast<double>(n) * sc.c[j]);
    sum_wlog += w * std::log(sc.x[j]);
    sum_w += w;
    const double threshold = sc.x[n - k - 1];
    const double tail = 1.0 - fv[n - k - 1];
    if (tail <= 0.0) continue;
    out[k - 1] = (sum_wlog - std::log(threshold) * sum_w) / tail;
  }
  return out;
}

TailFit fit_at(const TruncatedSample& sample, const SortedCurves& sc,
               const std::vector<double>& fv, Method method, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 2 || k >= n) {
    throw std::invalid_argument("sample fraction k must satisfy 2 <= k < n");
  }
  auto curve = gamma_curve(sc, fv, k);
  if (std::isnan(curve[k - 1])) {
    throw NumericalError(
        "estimator undefined: product-limit survival vanishes at the "
        "threshold");
  }
  TailFit fit;
  fit.method = method;
  fit.k = k;
  fit.threshold = sc.x[n - k - 1];
  fit.gamma1_hat = curve[k - 1];
  return fit;
}

}  // namespace

double cn(const TruncatedSample& sample, double x) {
  const std::size_t n = sample.size();
  if (n == 0) throw std::invalid_argument("empty sample");
  std::size_t count = 0;
  for (const auto& [xi, yi] : sample.pairs) {
    if (xi <= x && x <= yi) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(n);
}

ProductLimitCurve::ProductLimitCurve(CurveKind kind, std::vector<double> support,
                                     std::vector<double> values,
                                     double lower_value)
    : kind_(kind),
      support_(std::move(support)),
      values_(std::move(values)),
      lower_value_(lower_value) {}

double ProductLimitCurve::operator()(double x) const {
  const auto it = std::upper_bound(support_.begin(), support_.end(), x);
  if (it == support_.begin()) return lower_value_;
  return values_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

ProductLimitCurve lynden_bell_cdf(const TruncatedSample& sample) {
  auto sc = build_curves(sample);
  return ProductLimitCurve(CurveKind::LyndenBell, std::move(sc.x),
                           std::move(sc.lb), sc.lb_lower);
}

ProductLimitCurve woodroofe_cdf(const TruncatedSample& sample) {
  auto sc = build_curves(sample);
  return ProductLimitCurve(CurveKind::Woodroofe, std::move(sc.x),
                           std::move(sc.wf), sc.wf_lower);
}

TailFit gamma1_ww(const TruncatedSample& sample, std::size_t k) {
  auto sc = build_curves(sample);
  return fit_at(sample, sc, sc.lb, Method::WW, k);
}

TailFit gamma1_bmn(const TruncatedSample& sample, std::size_t k) {
  auto sc = build_curves(sample);
  return fit_at(sample, sc, sc.wf, Method::BMN, k);
}

std::vector<double> gamma1_ww_curve(const TruncatedSample& sample,
                                    std::size_t k_max) {
  auto sc = build_curves(sample);
  return gamma_curve(sc, sc.lb, k_max);
}

std::vector<double> gamma1_bmn_curve(const TruncatedSample& sample,
                                     std::size_t k_max) {
  auto sc = build_curves(sample);
  return gamma_curve(sc, sc.wf, k_max);
}

}  // namespace trunctail
