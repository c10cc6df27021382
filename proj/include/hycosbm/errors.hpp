#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hycosbm {

// Bad input: malformed files, violated preconditions, inconsistent shapes.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numerics broke down (NaN objective, nothing acceptable to sample, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Counters for guarded numerical events. Updates never throw on these; they
// clamp or substitute a fallback value and bump the matching counter.
struct Diagnostics {
  std::size_t clamped_intensities = 0;     // observed edge with lambda_e below the log floor
  std::size_t zero_w_denominators = 0;     // w entry forced to 0
  std::size_t degenerate_beta_columns = 0; // beta column reset to uniform
  std::size_t negative_discriminants = 0;  // quadratic discriminant clamped at 0
  std::size_t root_precondition_misses = 0; // u quadratic with gamma > 0 but c = 0
  std::size_t saturated_u = 0;             // gamma=0 update with zero denominator, u set to 1

  Diagnostics& operator+=(const Diagnostics& o) {
    clamped_intensities += o.clamped_intensities;
    zero_w_denominators += o.zero_w_denominators;
    degenerate_beta_columns += o.degenerate_beta_columns;
    negative_discriminants += o.negative_discriminants;
    root_precondition_misses += o.root_precondition_misses;
    saturated_u += o.saturated_u;
    return *this;
  }
};

}  // namespace hycosbm
