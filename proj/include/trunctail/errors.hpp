#ifndef TRUNCTAIL_ERRORS_HPP
#define TRUNCTAIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trunctail {

/// Thrown when an iterative numerical procedure fails (quadrature refinement
/// exhausted, no bracket for a root, estimator undefined at the data).
/// Validation problems use std::invalid_argument / std::domain_error instead,
/// so the CLI can map the two classes to distinct exit codes.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trunctail

#endif
