#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace powersieve {

// Thrown when a computation would exceed a configured size or operation
// budget. The message names the predicted size.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, std::uint64_t predicted)
      : std::runtime_error(what), predicted_(predicted) {}
  std::uint64_t predicted() const { return predicted_; }

 private:
  std::uint64_t predicted_;
};

// Iterative eigensolver ran out of iterations; carries the best estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double residual,
                   int iterations)
      : std::runtime_error(what),
        estimate_(estimate),
        residual_(residual),
        iterations_(iterations) {}
  double estimate() const { return estimate_; }
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double estimate_;
  double residual_;
  int iterations_;
};

}  // namespace powersieve
