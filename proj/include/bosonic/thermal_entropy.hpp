#ifndef BOSONIC_THERMAL_ENTROPY_HPP
#define BOSONIC_THERMAL_ENTROPY_HPP

#include <cmath>
#include <string>

#include "bosonic/errors.hpp"

namespace bosonic {

/// g(x) = (x+1) ln(x+1) - x ln x, the entropy (nats) of a thermal mode with
/// mean photon number x. g(0) = 0.
///
/// Evaluated as log1p(x) + x log1p(1/x), which stays accurate for large x.
inline double g(double x) {
  if (!(x >= 0.0)) throw DomainError("g(x) requires x >= 0, got " + std::to_string(x));
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  return std::log1p(x) + x * std::log1p(1.0 / x);
}

/// g'(x) = ln(1 + 1/x).
inline double g_prime(double x) {
  if (!(x > 0.0)) throw DomainError("g'(x) requires x > 0");
  return std::log1p(1.0 / x);
}

}  // namespace bosonic

#endif  // BOSONIC_THERMAL_ENTROPY_HPP
