#pragma once

namespace pstable {

inline constexpr double kPi = 3.14159265358979323846;

// Area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(double n);

// Volume of the unit ball in R^n.
double ball_volume(double n);

// Conjugate exponent p/(p-1); p=1 maps to +inf.
double conjugate_exponent(double p);

}  // namespace pstable
