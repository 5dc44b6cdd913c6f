#include "pstable/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pstable/constants.hpp"
#include "pstable/levelgeom.hpp"

namespace pstable {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool critical_line(int n, double p, double q) { return std::abs(n - (p + q)) < 1e-12; }

double field_resolution(const RadialField& f) { return f.h(); }
double field_resolution(const CartesianField& f) { return f.h; }

}  // namespace

ExponentTable embedding_exponents(int n, double p, double q) {
  if (n < 1 || p <= 1.0 || q < 0.0)
    throw std::invalid_argument("embedding_exponents: need n >= 1, p > 1, q >= 0");
  ExponentTable t;
  t.n = n;
  t.p = p;
  t.q = q;
  t.p_prime = conjugate_exponent(p);
  if (critical_line(n, p, q)) {
    t.regime = Regime::critical;
    t.p_q_star = std::numeric_limits<double>::infinity();
  } else if (n < p + q) {
    t.regime = Regime::morrey;
    t.p_q_star = std::numeric_limits<double>::infinity();
  } else {
    t.regime = Regime::sobolev;
    t.p_q_star = n * p / (n - (p + q));
  }
  return t;
}

double optimal_constant_Cnpq(int n, double p, double q) {
  if (!(n > p + q) || critical_line(n, p, q))
    throw std::invalid_argument("optimal_constant_Cnpq: need n > p + q");
  if (p <= 1.0) throw std::invalid_argument("optimal_constant_Cnpq: need p > 1");
  double pprime = conjugate_exponent(p);
  double pqstar = n * p / (n - (p + q));
  double lg = std::lgamma(n * p / (p + q)) - std::lgamma(n / (p + q)) -
              std::lgamma(1.0 + n * (p - 1.0) / (p + q));
  return std::pow((p - 1.0) / (n - (p + q)), 1.0 / pprime) * std::pow(double(n), -1.0 / pqstar) *
         std::exp(lg * (p + q) / (n * p));
}

ConstantSet constants_remark(int n, double p, double q, double A, double omega) {
  if (n < 2 || p <= 1.0 || q < 0.0)
    throw std::invalid_argument("constants_remark: need n >= 2, p > 1, q >= 0");
  double area = sphere_area(n);
  if (A < 0.0) A = std::pow(area, -1.0 / (n - 1.0));
  if (omega < 0.0) omega = ball_volume(n);
  ConstantSet cs;
  cs.n = n;
  cs.p = p;
  cs.q = q;
  cs.A = A;
  cs.Cnpq = kNaN;
  cs.C1 = kNaN;
  cs.C2 = kNaN;
  cs.C3 = kNaN;
  double pprime = conjugate_exponent(p);
  double comp = std::pow(A, q / p) * std::pow(area, q / ((n - 1.0) * p));  // rearrangement factor
  if (critical_line(n, p, q)) {
    cs.C3 = std::pow(area, -1.0 / p) * comp;
  } else if (n < p + q) {
    if (q + 1.0 < n) {
      cs.C1 = std::pow(area, -1.0 / p) * std::pow((p - 1.0) / (p + q - n), 1.0 / pprime) *
              std::pow(omega / ball_volume(n), (p + q - n) / (n * p)) * comp;
    }
  } else {
    cs.Cnpq = optimal_constant_Cnpq(n, p, q);
    double pqstar = n * p / (n - (p + q));
    cs.C2 = cs.Cnpq * std::pow(area, 1.0 / pqstar - 1.0 / p) * comp;
  }
  return cs;
}

namespace {

template <class Field>
Report morrey_impl(const Field& f, int n, double p, double q, const ConstantSet& cs, double tol) {
  if (!(q + 1.0 < n && n < p + q))
    throw std::invalid_argument("check_morrey: need q + 1 < n < p + q");
  if (!std::isfinite(cs.C1)) throw std::invalid_argument("check_morrey: C1 undefined for regime");
  Functional I = geometric_functional(f, p, q);
  Report rep;
  rep.name = "morrey";
  rep.lhs = f.max_abs();
  rep.rhs = cs.C1 * I.value;
  rep.constant = cs.C1;
  rep.resolution = field_resolution(f);
  finalize_report(rep, tol);
  if (rep.lhs == 0.0) rep.pass = true;
  return rep;
}

template <class Field>
Report sobolev_impl(const Field& f, int n, double p, double q, double r, const ConstantSet& cs,
                    double tol) {
  if (!(n > p + q) || critical_line(n, p, q))
    throw std::invalid_argument("check_sobolev: need n > p + q");
  double pqstar = n * p / (n - (p + q));
  if (!(r >= 1.0 && r <= pqstar + 1e-12))
    throw std::invalid_argument("check_sobolev: need 1 <= r <= p_q*");
  if (!std::isfinite(cs.C2)) throw std::invalid_argument("check_sobolev: C2 undefined for regime");
  Functional I = geometric_functional(f, p, q);
  double omega = f.domain_measure();
  Report rep;
  rep.name = "sobolev";
  rep.lhs = lp_norm(f, r);
  rep.rhs = cs.C2 * std::pow(omega, 1.0 / r - 1.0 / pqstar) * I.value;
  rep.constant = cs.C2;
  rep.resolution = field_resolution(f);
  rep.note = "r=" + std::to_string(r);
  finalize_report(rep, tol);
  if (rep.lhs == 0.0) rep.pass = true;
  return rep;
}

double mt_integrand(double v, double scale, double pprime) {
  if (scale <= 0.0) return v == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  double e = std::pow(std::abs(v) / scale, pprime);
  return std::exp(std::min(e, 700.0));
}

template <class Field>
Report mt_impl(const Field& f, int n, double p, double q, const ConstantSet& cs, double tol) {
  if (!critical_line(n, p, q))
    throw std::invalid_argument("check_moser_trudinger: need n = p + q");
  if (!std::isfinite(cs.C3))
    throw std::invalid_argument("check_moser_trudinger: C3 undefined for regime");
  Functional I = geometric_functional(f, p, q);
  double pprime = conjugate_exponent(p);
  double scale = cs.C3 * I.value;
  Report rep;
  rep.name = "moser-trudinger";
  rep.resolution = field_resolution(f);
  rep.constant = cs.C3;
  if constexpr (std::is_same_v<Field, RadialField>) {
    rep.lhs = integrate_radial_nodes(
        f, [&](std::size_t i) { return mt_integrand(f.values[i], scale, pprime); });
  } else {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.nodes(); ++i)
      acc += f.weight[i] * mt_integrand(f.values[i], scale, pprime);
    rep.lhs = acc * f.cell_volume();
  }
  rep.rhs = n / (n - 1.0) * f.domain_measure();
  finalize_report(rep, tol);
  return rep;
}

template <class Field>
Report isoperimetric_impl(const Field& f, int n, double tol) {
  double vmax = f.max_abs();
  Report rep;
  rep.name = "isoperimetric";
  rep.resolution = field_resolution(f);
  rep.constant = n * std::pow(ball_volume(n), 1.0 / n);
  rep.rhs = 1.0;
  rep.lhs = 0.0;
  if (vmax == 0.0) {  // nothing above any level: 0 <= 0 across the grid
    finalize_report(rep, tol);
    return rep;
  }
  int K = 19;
  double targ = 0.0;
  for (int k = 0; k < K; ++k) {
    double t = vmax * (0.05 + 0.9 * (k + 0.5) / K);
    std::vector<double> ts = {t};
    double V = distribution(f, ts).volume[0];
    double P = perimeter(f, t);
    if (P <= 0.0 && V <= 0.0) continue;
    double ratio = rep.constant * std::pow(V, (n - 1.0) / n) / std::max(P, 1e-300);
    if (ratio > rep.lhs) {
      rep.lhs = ratio;
      targ = t;
    }
  }
  rep.note = "argmax_t=" + std::to_string(targ);
  finalize_report(rep, tol);
  return rep;
}

}  // namespace

Report check_morrey(const RadialField& f, double p, double q, const ConstantSet& cs, double tol) {
  return morrey_impl(f, f.n, p, q, cs, tol);
}
Report check_morrey(const CartesianField& f, double p, double q, const ConstantSet& cs,
                    double tol) {
  return morrey_impl(f, f.d, p, q, cs, tol);
}

Report check_sobolev(const RadialField& f, double p, double q, double r, const ConstantSet& cs,
                     double tol) {
  return sobolev_impl(f, f.n, p, q, r, cs, tol);
}
Report check_sobolev(const CartesianField& f, double p, double q, double r, const ConstantSet& cs,
                     double tol) {
  return sobolev_impl(f, f.d, p, q, r, cs, tol);
}

Report check_moser_trudinger(const RadialField& f, double p, double q, const ConstantSet& cs,
                             double tol) {
  return mt_impl(f, f.n, p, q, cs, tol);
}
Report check_moser_trudinger(const CartesianField& f, double p, double q, const ConstantSet& cs,
                             double tol) {
  return mt_impl(f, f.d, p, q, cs, tol);
}

Report isoperimetric_check(const RadialField& f, double tol) {
  return isoperimetric_impl(f, f.n, tol);
}
Report isoperimetric_check(const CartesianField& f, double tol) {
  return isoperimetric_impl(f, f.d, tol);
}

}  // namespace pstable
