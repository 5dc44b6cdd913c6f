#include "pstable/constants.hpp"

#include <cmath>
#include <limits>

namespace pstable {

double sphere_area(double n) {
  // lgamma keeps this stable for the large-n exponent sweeps.
  return 2.0 * std::exp(0.5 * n * std::log(kPi) - std::lgamma(0.5 * n));
}

double ball_volume(double n) { return sphere_area(n) / n; }

double conjugate_exponent(double p) {
  if (p <= 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

}  // namespace pstable
