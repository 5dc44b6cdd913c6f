#pragma once

#include <array>

#include "pstable/fields.hpp"
#include "pstable/report.hpp"

namespace pstable {

// Decreasing radial rearrangement of |f| onto the volume-matched ball.
struct RearrangementResult {
  RadialField vstar;                           // radius R = (|Omega|/|B_1|)^{1/n}
  std::array<double, 3> source_norms{0, 0, 0};  // L^1, L^2, L^inf
  std::array<double, 3> star_norms{0, 0, 0};
};

RearrangementResult schwarz(const CartesianField& f, int n, int levels);
RearrangementResult schwarz(const RadialField& f, int n, int levels);

// Weighted-gradient comparison: the singular-weight seminorm of the
// rearranged field against the level-set functional of the source. With the
// sphere-equality constant the admissible ratio bound is exactly 1.
// A < 0 selects the sphere value |dB_1|^{-1/(n-1)}.
Report symmetrized_comparison(const CartesianField& f, double p, double q, double A = -1.0,
                              double tol = 1e-2, int levels = 256);
Report symmetrized_comparison(const RadialField& f, double p, double q, double A = -1.0,
                              double tol = 1e-2, int levels = 256);

// The ratio bound A^{q/p} |dB_1|^{q/((n-1)p)}.
double comparison_constant(int n, double p, double q, double A);

}  // namespace pstable
