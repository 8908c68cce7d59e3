#ifndef TRUNCTAIL_TAILFIT_HPP
#define TRUNCTAIL_TAILFIT_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trunctail {

enum class Method { Semi, BMN, WW };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::Semi: return "semi";
    case Method::BMN: return "bmn";
    case Method::WW: return "ww";
  }
  return "?";
}

inline Method parse_method(const std::string& name) {
  if (name == "semi") return Method::Semi;
  if (name == "bmn") return Method::BMN;
  if (name == "ww") return Method::WW;
  throw std::invalid_argument("unknown estimator method: " + name);
}

/// A tail-index estimate at sample fraction k.
struct TailFit {
  Method method;
  std::size_t k = 0;
  double threshold = 0.0;  // X_{n-k:n}
  double gamma1_hat = 0.0;
  std::optional<std::vector<double>> theta_hat;
  std::optional<double> std_error;  // sigma_hat / sqrt(k)
};

}  // namespace trunctail

#endif
