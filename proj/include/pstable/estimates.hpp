#pragma once

#include <string>
#include <vector>

#include "pstable/fields.hpp"
#include "pstable/psolve.hpp"
#include "pstable/report.hpp"

namespace pstable {

// Exponent bookkeeping for the a priori estimates. Entries that are undefined
// in the given (n, p) regime are NaN; the thresholds tell which regime holds.
struct RegularityExponents {
  int n = 0;
  double p = 0.0;
  double q2star = 0.0;   // np/(n-p-2); NaN when n <= p+2 (sup bound regime)
  double r1 = 0.0;       // np^2/((1+p)n - p - 2)
  double rbar0 = 0.0;    // np/(n - 2 sqrt((n-1)/(p-1)) - p - 2); NaN when <= 0
  double rbar1 = 0.0;    // np/(n - 2 sqrt((n-1)/(p-1)) - 2); NaN when <= 0
  double rtilde0 = 0.0;  // (p-1)n/(n - (p + p')); NaN when n <= p + p'
  double radial_bounded_threshold = 0.0;  // p + 4p/(p-1)
  bool radially_bounded = false;          // n < threshold
};

RegularityExponents exponent_table(int n, double p);

// One truncation-level (or exponent) sweep entry of an a priori estimate.
struct EstimateReport {
  std::string id;
  double s = 0.0;  // sweep parameter: truncation level, r for the gradient
                   // bootstrap, lambda for branch sweeps
  double lhs = 0.0;
  double rhs = 0.0;
  double constant_measured = 0.0;
  bool pass = false;
};

// Logarithmic levels in (0, sup], spanning `decades` below the top.
std::vector<double> truncation_grid(double sup, int points = 32, double decades = 3.0);

// sup-bound truncation estimate, n <= p+2 regime:
//   ||u||_inf <= s + (C/s^{2/p}) |Omega|^{(p+2-n)/(np)} (int_{u<=s}|grad u|^{p+2})^{1/p}
// `C` is the configured constant; constant_measured is the smallest C making
// this (point, s) pass.
EstimateReport check_thm14_a(const BranchPoint& pt, double s, double C);
double thm14a_constant(const BranchPoint& pt, double s);

// truncated L^{np/(n-p-2)} estimate, n > p+2 regime:
//   (int_{u>s}(u-s)^{q2*})^{1/q2*} <= (C/s^{2/p}) (int_{u<=s}|grad u|^{p+2})^{1/p}
EstimateReport check_thm14_b(const BranchPoint& pt, double s, double C);
double thm14b_constant(const BranchPoint& pt, double s);

// Regression pins: sup of the measured constants over the production branch
// sweeps (32-level grid, M = 2000). The bounds carry no closed-form constant,
// so pinned measurements are the reproducible contract; drift beyond a few
// percent on the same corpus means behavior changed.
inline constexpr double kThm14aPinnedC = 0.068086;  // n=3, p=2 branch
inline constexpr double kThm14bPinnedC = 0.016796;  // n=10, p=2 branch

// Elementary gradient bound (entropy-solution bootstrap):
//   int |grad u|^r <= r|Omega| + (r1/r - 1)^{-1} (int |u|^{r0} + ||h||_1),
// h = lambda f(u), r1 = p r0/(r0+1); needs r0 >= (p-1)n/(n-p) and 1 <= r < r1.
EstimateReport bootstrap_gradient(const BranchPoint& pt, double r0, double r);

// Branch-level L^inf / L^{q2*} / W^{1,p} bounds in terms of ||f(u)||_1 on a
// convex domain. Per-point entries carry the measured constant; the trailing
// "stability" entries assert the measured constant and the W^{1,p} column do
// not blow up at the fold endpoint (the theorem's constants are lambda-free).
std::vector<EstimateReport> check_thm16(const Branch& br);

// Boundary collar estimate on a strictly convex domain:
//   ||u||_{L^inf(Omega_eps)} <= (1/gamma) ||u||_{L^1(Omega)}
// Reports the measured gamma = ||u||_1 / collar sup in `constant`.
Report boundary_estimate_check(const RadialField& u, double eps_b);
Report boundary_estimate_check(const CartesianField& u, double eps_b);

}  // namespace pstable
