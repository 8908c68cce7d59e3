#ifndef TRUNCTAIL_MODEL_HPP
#define TRUNCTAIL_MODEL_HPP

#include <string>

#include "trunctail/rng.hpp"

namespace trunctail {

enum class Family { Burr, Frechet, Frechet2 };

std::string family_name(Family f);

/// Heavy-tailed parametric family instance.
///
/// Burr(gamma, delta):     survival (1 + x^{1/delta})^{-delta/gamma}, x >= 0
/// Frechet(gamma):         survival 1 - exp(-x^{-1/gamma}), x > 0
/// Frechet2(scale, shape): cdf exp(-(scale/x)^shape), x > 0; tail index 1/shape
///
/// Immutable after construction; all evaluations are pure. CDF/survival are
/// computed in log space and exponentiated last, so values stay meaningful far
/// out in the tail.
class ParametricModel {
 public:
  static ParametricModel burr(double gamma, double delta);
  static ParametricModel frechet(double gamma);
  static ParametricModel frechet2(double scale, double shape);

  Family family() const { return family_; }
  double param(int i) const { return i == 0 ? p0_ : p1_; }
  int n_params() const { return family_ == Family::Frechet ? 1 : 2; }

  /// Index of regular variation of the survival function.
  double tail_index() const;

  double survival(double x) const;
  double log_survival(double x) const;
  double cdf(double x) const;
  double density(double x) const;
  double log_density(double x) const;

  /// Inverse CDF, u in (0,1).
  double quantile(double u) const;

  double sample(RngStream& rng) const { return quantile(rng.uniform01()); }

  std::string describe() const;

 private:
  ParametricModel(Family f, double p0, double p1);

  Family family_;
  double p0_, p1_;
};

}  // namespace trunctail

#endif
