#include "trunctail/cmle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "trunctail/errors.hpp"

namespace trunctail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct NelderMeadResult {
  std::vector<double> x;
  double value = kNegInf;  // maximized objective
  bool converged = false;
  std::size_t evals = 0;
};

// Maximizes f over R^d (f returns -inf for infeasible points).
template <typename F>
NelderMeadResult nelder_mead_max(F&& f, const std::vector<double>& x0,
                                 double tol, std::size_t max_evals) {
  const std::size_t d = x0.size();
  NelderMeadResult res;

  struct Vertex {
    std::vector<double> x;
    double neg;  // minimized value = -f(x)
  };
  auto eval = [&](const std::vector<double>& x) {
    ++res.evals;
    const double v = f(x);
    return std::isfinite(v) ? -v : std::numeric_limits<double>::infinity();
  };

  std::vector<Vertex> simplex(d + 1);
  simplex[0] = {x0, eval(x0)};
  for (std::size_t i = 0; i < d; ++i) {
    auto x = x0;
    x[i] += 0.25;
    simplex[i + 1] = {x, eval(x)};
  }

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  while (res.evals < max_evals) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.neg < b.neg; });

    double diam = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        diam = std::max(diam, std::fabs(simplex[i].x[j] - simplex[0].x[j]));
      }
    }
    if (diam < tol) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i].x[j];
    }
    for (auto& c : centroid) c /= static_cast<double>(d);

    auto blend = [&](double t, const std::vector<double>& far) {
      std::vector<double> x(d);
      for (std::size_t j = 0; j < d; ++j) {
        x[j] = centroid[j] + t * (centroid[j] - far[j]);
      }
      return x;
    };

    const auto& worst = simplex[d];
    auto xr = blend(alpha, worst.x);
    const double fr = eval(xr);
    if (fr < simplex[0].neg) {
      auto xe = blend(gamma, worst.x);
      const double fe = eval(xe);
      simplex[d] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[d - 1].neg) {
      simplex[d] = {xr, fr};
    } else {
      auto xc = blend(-rho, worst.x);
      const double fc = eval(xc);
      if (fc < simplex[d].neg) {
        simplex[d] = {xc, fc};
      } else {
        for (std::size_t i = 1; i <= d; ++i) {  // shrink toward the best
          for (std::size_t j = 0; j < d; ++j) {
            simplex[i].x[j] =
                simplex[0].x[j] + sigma * (simplex[i].x[j] - simplex[0].x[j]);
          }
          simplex[i].neg = eval(simplex[i].x);
        }
      }
    }
  }

  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.neg < b.neg; });
  res.x = simplex[0].x;
  res.value = -simplex[0].neg;
  return res;
}

}  // namespace

std::size_t family_dim(Family family) {
  return family == Family::Frechet ? 1 : 2;
}

ParametricModel make_model(Family family, std::span<const double> theta) {
  if (theta.size() != family_dim(family)) {
    throw std::invalid_argument("theta dimension does not match family");
  }
  switch (family) {
    case Family::Burr: return ParametricModel::burr(theta[0], theta[1]);
    case Family::Frechet: return ParametricModel::frechet(theta[0]);
    case Family::Frechet2: return ParametricModel::frechet2(theta[0], theta[1]);
  }
  throw std::invalid_argument("unknown family");
}

double conditional_log_likelihood(Family family, std::span<const double> theta,
                                  const TruncatedSample& sample) {
  if (sample.size() == 0) throw std::invalid_argument("empty sample");
  if (theta.size() != family_dim(family)) {
    throw std::invalid_argument("theta dimension does not match family");
  }
  for (double t : theta) {
    if (!(std::isfinite(t) && t > 0.0)) return kNegInf;
  }
  try {
    const ParametricModel g = make_model(family, theta);
    double ll = 0.0;
    for (const auto& [x, y] : sample.pairs) {
      ll += g.log_density(y) - g.log_survival(x);
      if (!std::isfinite(ll)) return kNegInf;
    }
    return ll;
  } catch (const std::exception&) {
    return kNegInf;  // observation outside support or invalid parameters
  }
}

CmleFit fit_cmle(const TruncatedSample& sample, Family family,
                 std::optional<std::vector<double>> init,
                 const CmleOptions& options) {
  if (sample.size() < 10) {
    throw std::invalid_argument("fit_cmle needs at least 10 observations");
  }
  const std::size_t d = family_dim(family);

  auto objective = [&](const std::vector<double>& log_theta) {
    std::vector<double> theta(d);
    for (std::size_t i = 0; i < d; ++i) theta[i] = std::exp(log_theta[i]);
    return conditional_log_likelihood(family, theta, sample);
  };

  std::vector<std::vector<double>> starts;
  if (init) {
    if (init->size() != d) {
      throw std::invalid_argument("init dimension does not match family");
    }
    std::vector<double> s(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!((*init)[i] > 0.0)) {
        throw std::invalid_argument("init components must be positive");
      }
      s[i] = std::log((*init)[i]);
    }
    starts.push_back(std::move(s));
  } else {
    const double lo = std::log(0.1), hi = std::log(10.0);
    const std::size_t m = std::max<std::size_t>(options.grid_starts, 1);
    for (std::size_t i = 0; i < m; ++i) {
      const double t =
          m == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(m - 1);
      starts.emplace_back(d, lo + t * (hi - lo));
    }
  }

  CmleFit best;
  best.log_likelihood = kNegInf;
  bool any_feasible = false;
  for (const auto& s : starts) {
    if (!std::isfinite(objective(s))) continue;  // infeasible start
    any_feasible = true;
    auto r = nelder_mead_max(objective, s, options.simplex_tol,
                             options.max_evals_per_start);
    best.iterations += r.evals;
    ++best.n_restarts_used;
    if (r.value > best.log_likelihood) {
      best.log_likelihood = r.value;
      best.converged = r.converged;
      best.theta_hat.resize(d);
      for (std::size_t i = 0; i < d; ++i) best.theta_hat[i] = std::exp(r.x[i]);
    }
  }
  if (!any_feasible || !std::isfinite(best.log_likelihood)) {
    throw NumericalError("fit_cmle: every start point was infeasible");
  }
  return best;
}

}  // namespace trunctail
