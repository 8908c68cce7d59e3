#ifndef TRUNCTAIL_NONPARAM_HPP
#define TRUNCTAIL_NONPARAM_HPP

#include <cstddef>
#include <vector>

#include "trunctail/sample.hpp"
#include "trunctail/tailfit.hpp"

namespace trunctail {

/// Risk-set process C_n(x) = n^{-1} sum_i 1(x_i <= x <= y_i).
double cn(const TruncatedSample& sample, double x);

enum class CurveKind { LyndenBell, Woodroofe };

/// Right-continuous step CDF estimate under random right truncation.
/// Lynden-Bell uses factors 1 - 1/(n C_n(x_i)), Woodroofe exp(-1/(n C_n(x_i))),
/// multiplied over the observed points strictly above the evaluation point.
class ProductLimitCurve {
 public:
  ProductLimitCurve(CurveKind kind, std::vector<double> support,
                    std::vector<double> values, double lower_value);

  CurveKind kind() const { return kind_; }
  const std::vector<double>& support() const { return support_; }
  /// CDF value at support()[i] (right-continuous, i.e. including the factor of
  /// every strictly larger point only).
  const std::vector<double>& values() const { return values_; }

  double operator()(double x) const;

 private:
  CurveKind kind_;
  std::vector<double> support_;  // ascending
  std::vector<double> values_;
  double lower_value_;  // value below the smallest support point
};

ProductLimitCurve lynden_bell_cdf(const TruncatedSample& sample);
ProductLimitCurve woodroofe_cdf(const TruncatedSample& sample);

/// Lynden-Bell integral tail-index estimator at sample fraction k.
TailFit gamma1_ww(const TruncatedSample& sample, std::size_t k);
/// Woodroofe integral tail-index estimator at sample fraction k.
TailFit gamma1_bmn(const TruncatedSample& sample, std::size_t k);

/// Estimates for every k = 1..k_max in one sweep; entry [k-1] holds the value
/// at sample fraction k, NaN where the estimator is undefined.
std::vector<double> gamma1_ww_curve(const TruncatedSample& sample,
                                    std::size_t k_max);
std::vector<double> gamma1_bmn_curve(const TruncatedSample& sample,
                                     std::size_t k_max);

}  // namespace trunctail

#endif
