#include "trunctail/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace trunctail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 + exp(t)) without overflow
double softplus(double t) {
  if (t > 36.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

void check_positive(const char* name, double v) {
  if (!(std::isfinite(v) && v > 0.0)) {
    std::ostringstream os;
    os << "parameter " << name << " must be finite and positive, got " << v;
    throw std::invalid_argument(os.str());
  }
}

void check_x(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite argument x");
  if (x < 0.0) throw std::domain_error("argument x must be nonnegative");
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Burr: return "burr";
    case Family::Frechet: return "frechet";
    case Family::Frechet2: return "frechet2";
  }
  return "?";
}

ParametricModel::ParametricModel(Family f, double p0, double p1)
    : family_(f), p0_(p0), p1_(p1) {}

ParametricModel ParametricModel::burr(double gamma, double delta) {
  check_positive("gamma", gamma);
  check_positive("delta", delta);
  return ParametricModel(Family::Burr, gamma, delta);
}

ParametricModel ParametricModel::frechet(double gamma) {
  check_positive("gamma", gamma);
  return ParametricModel(Family::Frechet, gamma, 0.0);
}

ParametricModel ParametricModel::frechet2(double scale, double shape) {
  check_positive("scale", scale);
  check_positive("shape", shape);
  return ParametricModel(Family::Frechet2, scale, shape);
}

double ParametricModel::tail_index() const {
  switch (family_) {
    case Family::Burr: return p0_;
    case Family::Frechet: return p0_;
    case Family::Frechet2: return 1.0 / p1_;
  }
  return 0.0;
}

double ParametricModel::log_survival(double x) const {
  check_x(x);
  switch (family_) {
    case Family::Burr: {
      if (x == 0.0) return 0.0;
      const double gamma = p0_, delta = p1_;
      return -(delta / gamma) * softplus(std::log(x) / delta);
    }
    case Family::Frechet: {
      // survival = 1 - exp(-x^{-1/gamma}); x = 0 maps to survival 1
      if (x == 0.0) return 0.0;
      const double lt = -std::log(x) / p0_;
      const double t = std::exp(lt);
      // 1 - e^{-t} = t (1 - t/2 + ...): switch before t underflows
      if (t < 1e-8) return lt + std::log1p(-0.5 * t);
      return std::log(-std::expm1(-t));
    }
    case Family::Frechet2: {
      if (x == 0.0) return 0.0;
      const double lt = p1_ * (std::log(p0_) - std::log(x));
      const double t = std::exp(lt);
      if (t < 1e-8) return lt + std::log1p(-0.5 * t);
      return std::log(-std::expm1(-t));
    }
  }
  return -kInf;
}

double ParametricModel::survival(double x) const {
  return std::exp(log_survival(x));
}

double ParametricModel::cdf(double x) const {
  check_x(x);
  switch (family_) {
    case Family::Burr:
      return -std::expm1(log_survival(x));
    case Family::Frechet: {
      if (x == 0.0) return 0.0;
      return std::exp(-std::exp(-std::log(x) / p0_));
    }
    case Family::Frechet2: {
      if (x == 0.0) return 0.0;
      return std::exp(-std::exp(p1_ * (std::log(p0_) - std::log(x))));
    }
  }
  return 0.0;
}

double ParametricModel::log_density(double x) const {
  if (!std::isfinite(x)) throw std::domain_error("non-finite argument x");
  if (x <= 0.0) throw std::domain_error("density argument outside support");
  const double lx = std::log(x);
  switch (family_) {
    case Family::Burr: {
      const double gamma = p0_, delta = p1_;
      return -std::log(gamma) + (1.0 / delta - 1.0) * lx -
             (delta / gamma + 1.0) * softplus(lx / delta);
    }
    case Family::Frechet: {
      const double gamma = p0_;
      const double t = std::exp(-lx / gamma);
      return -std::log(gamma) - (1.0 / gamma + 1.0) * lx - t;
    }
    case Family::Frechet2: {
      const double a = p0_, r = p1_;
      const double t = std::exp(r * (std::log(a) - lx));
      return std::log(r) + r * std::log(a) - (r + 1.0) * lx - t;
    }
  }
  return -kInf;
}

double ParametricModel::density(double x) const {
  return std::exp(log_density(x));
}

double ParametricModel::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("quantile level must lie in (0,1)");
  }
  switch (family_) {
    case Family::Burr: {
      const double gamma = p0_, delta = p1_;
      // survival(x) = 1-u  =>  x = ((1-u)^{-gamma/delta} - 1)^delta
      const double inner = std::expm1(-(gamma / delta) * std::log1p(-u));
      return std::exp(delta * std::log(inner));
    }
    case Family::Frechet:
      return std::exp(-p0_ * std::log(-std::log(u)));
    case Family::Frechet2:
      return p0_ * std::exp(-std::log(-std::log(u)) / p1_);
  }
  return 0.0;
}

std::string ParametricModel::describe() const {
  std::ostringstream os;
  os << family_name(family_) << "(" << p0_;
  if (n_params() == 2) os << ", " << p1_;
  os << ")";
  return os.str();
}

}  // namespace trunctail
