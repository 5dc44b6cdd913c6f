#pragma once

#include "pstable/fields.hpp"
#include "pstable/report.hpp"

namespace pstable {

enum class Regime { morrey, sobolev, critical };

// Embedding exponents attached to a parameter triple.
struct ExponentTable {
  int n = 0;
  double p = 0.0, q = 0.0;
  double p_q_star = 0.0;  // np/(n-(p+q)); +inf at the critical line, <0 never stored
  double p_prime = 0.0;
  Regime regime = Regime::sobolev;
};
ExponentTable embedding_exponents(int n, double p, double q);

// Admissible constants for the three embedding regimes. Entries that do not
// apply to the regime of (n,p,q) are quiet NaN.
struct ConstantSet {
  int n = 0;
  double p = 0.0, q = 0.0;
  double A = 0.0;     // surface-inequality constant in use
  double Cnpq = 0.0;  // 1-D weighted Sobolev constant (sobolev regime)
  double C1 = 0.0, C2 = 0.0, C3 = 0.0;
};

// Optimal constant of the 1-D weighted Sobolev inequality
//   (int_0^R |phi|^{p_q*} s^{n-1} ds)^{1/p_q*}
//     <= C(n,p,q) (int_0^R s^{-q} |phi'|^p s^{n-1} ds)^{1/p}.
double optimal_constant_Cnpq(int n, double p, double q);

// A < 0 selects the sphere-equality value |dB_1|^{-1/(n-1)}. omega is the
// domain measure entering C1; omega < 0 selects |B_1|.
ConstantSet constants_remark(int n, double p, double q, double A = -1.0, double omega = -1.0);

// sup-norm bound, valid for q+1 < n < p+q. The measure factor is already
// inside C1; the report compares ||f||_inf against C1 * I_{p,q}(f).
Report check_morrey(const RadialField& f, double p, double q, const ConstantSet& cs,
                    double tol = 1e-2);
Report check_morrey(const CartesianField& f, double p, double q, const ConstantSet& cs,
                    double tol = 1e-2);

// L^r bound for n > p+q and 1 <= r <= p_q*.
Report check_sobolev(const RadialField& f, double p, double q, double r, const ConstantSet& cs,
                     double tol = 1e-2);
Report check_sobolev(const CartesianField& f, double p, double q, double r, const ConstantSet& cs,
                     double tol = 1e-2);

// Exponential integrability at the critical line n = p+q.
Report check_moser_trudinger(const RadialField& f, double p, double q, const ConstantSet& cs,
                             double tol = 1e-2);
Report check_moser_trudinger(const CartesianField& f, double p, double q, const ConstantSet& cs,
                             double tol = 1e-2);

// n |B_1|^{1/n} V(t)^{(n-1)/n} <= P(t) over a grid of interior thresholds.
Report isoperimetric_check(const RadialField& f, double tol = 1e-2);
Report isoperimetric_check(const CartesianField& f, double tol = 1e-2);

}  // namespace pstable
