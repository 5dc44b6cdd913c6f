#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "pstable/fields.hpp"
#include "pstable/report.hpp"

namespace pstable {

// Builtin nonlinearities: the two superlinear families the sharpness examples
// use, plus a constant source as the degenerate torsion test.
struct Nonlinearity {
  enum class Kind { exponential, power, constant };
  Kind kind = Kind::exponential;
  double m = 2.0;  // power exponent, must exceed p - 1
  double c = 1.0;  // constant source value

  double f(double u) const;
  double fp(double u) const;
  double G(double u) const;  // antiderivative with G(0) = 0
};
Nonlinearity make_exp();
Nonlinearity make_power(double m);
Nonlinearity make_const(double c);

struct ProblemSpec {
  int n = 2;
  double p = 2.0;
  Nonlinearity f;
  double eps_rel = 1e-8;    // regularization relative to max slope
  int M = 2000;             // uniform radial cells on [0,1]
  double lambda_max = -1;   // optional cap (constant sources have no fold)
};

struct BranchPoint {
  int n = 0;
  double p = 2.0;
  Nonlinearity f;
  double lambda = 0.0;
  double eps_used = 0.0;
  RadialField u;
  int newton_iters = 0;
  double residual_rel = 0.0;
  double mu1 = 0.0;
  double sup_u = 0.0;
  double crit_norm = 0.0;  // L^{np/(n-p-2)}; NaN when n <= p+2
  double w1p_seminorm = 0.0;
  double l1_f = 0.0;
  double pohozaev_residual = 0.0;
};

struct Branch {
  std::vector<BranchPoint> points;  // strictly increasing lambda
  double lambda_last = 0.0;         // last converged
  double lambda_fail = 0.0;         // first failed; +inf when capped, no fold
  const BranchPoint& extremal() const { return points.back(); }
};

struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct StepPolicy {
  double lambda0 = 0.01;
  double first_step_frac = 0.3;  // initial step as a fraction of lambda
  double grow = 1.3;
  double shrink = 0.5;
  double stop_rel = 1e-8;  // stop when step < stop_rel * lambda
  int max_points = 4000;
};

// One damped-Newton solve of the regularized radial problem
//   -(r^{n-1} (eps^2 + u'^2)^{(p-2)/2} u')' = lambda r^{n-1} f(u),  u(1) = 0
// continued from init. Throws NoConvergence when Newton stalls.
BranchPoint solve_at(const ProblemSpec& spec, double lambda, const RadialField& init);

// Minimal-branch continuation with adaptive step halving at the fold.
Branch continue_branch(const ProblemSpec& spec, const StepPolicy& pol = {});

// Smallest eigenvalue of the radial stability form
//   Q(phi) = int [(p-1)(eps^2+u'^2)^{(p-2)/2} phi'^2 - lambda f'(u) phi^2] r^{n-1} dr
// over discrete phi with phi(1) = 0.
double stability_eigenvalue(const BranchPoint& pt);

// ((n-1)/(p-1)) int r^{-2}|u'|^p eta^2 r^{n-1} dr <= int |u'|^p eta'^2 r^{n-1} dr,
// the radial form of the inequality behind the regularity results. eta must
// vanish at r = 1 and live on the same mesh as u.
Report stability_key_inequality(const BranchPoint& pt, const RadialField& eta, double p,
                                double tol = 1e-2);

struct PohozaevCheck {
  double residual = 0.0;      // |volume identity - boundary term| / scale
  double volume_lhs = 0.0;    // n int G(u) - ((n-p)/p) int |grad u|^p
  double boundary_rhs = 0.0;  // (1/p') |dB_1| |u'(1)|^p
  double lemma_lhs = 0.0;     // int |grad u|^p
  double lemma_rhs = 0.0;     // max|x| (1/p') int_{dB} |grad u|^p
  bool lemma_pass = false;
};
PohozaevCheck pohozaev_check(const BranchPoint& pt);

// psi(t) = |dB_1| r(t)^{n-1} |u'(r(t))|^{p+1} by monotone level inversion.
// Throws when u is not strictly decreasing.
std::vector<std::array<double, 2>> psi_profile(const BranchPoint& pt, int samples = 256);

// Test-function schedule of the critical case: eta = u/s below the level s,
// an exponential of the quadratured psi^{-1/(n-1)} integral above it.
RadialField eta_s_schedule(const BranchPoint& pt, double s);

// Closed-form sup bound of the critical case n = p+2, asserted with the
// measured domination constant.
Report critical_case_bound(const BranchPoint& pt, double s, double tol = 1e-2);

}  // namespace pstable
