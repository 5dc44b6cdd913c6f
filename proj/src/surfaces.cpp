#include "pstable/surfaces.hpp"

#include <cmath>
#include <stdexcept>

#include "pstable/constants.hpp"

namespace pstable {

ZonalSurface make_sphere(int n, double R) {
  ZonalSurface M;
  M.n = n;
  M.c = [R](double t) { return R * std::cos(t); };
  M.cp = [R](double t) { return -R * std::sin(t); };
  M.cpp = [R](double t) { return -R * std::cos(t); };
  M.s = [R](double t) { return R * std::sin(t); };
  M.sp = [R](double t) { return R * std::cos(t); };
  M.spp = [R](double t) { return -R * std::sin(t); };
  return M;
}

ZonalSurface make_ellipsoid4(double a, double b) {
  ZonalSurface M;
  M.n = 4;
  M.c = [a](double t) { return a * std::cos(t); };
  M.cp = [a](double t) { return -a * std::sin(t); };
  M.cpp = [a](double t) { return -a * std::cos(t); };
  M.s = [b](double t) { return b * std::sin(t); };
  M.sp = [b](double t) { return b * std::cos(t); };
  M.spp = [b](double t) { return -b * std::sin(t); };
  return M;
}

ChartSurface make_torus(double R0, double r0) {
  ChartSurface M;
  M.X = [R0, r0](double u, double v) {
    double cu = std::cos(2.0 * kPi * u), su = std::sin(2.0 * kPi * u);
    double cv = std::cos(2.0 * kPi * v), sv = std::sin(2.0 * kPi * v);
    double w = R0 + r0 * cv;
    return std::array<double, 3>{w * cu, w * su, r0 * sv};
  };
  return M;
}

SurfaceCheck michael_simon_zonal(const ZonalSurface& M, const std::function<double(double)>& phi,
                                 const std::function<double(double)>& dphi, double q,
                                 int quad_cells) {
  double nm1 = M.n - 1.0;
  if (q < 1.0 || q >= nm1) throw std::invalid_argument("michael_simon: need 1 <= q < n-1");
  double qstar = nm1 * q / (nm1 - q);
  double ring = sphere_area(M.n - 1);  // measure of the unit sphere in R^{n-1}

  // integrand at theta: returns (|phi|^{q*} w, (|grad phi|^q + |H phi|^q) w)
  auto eval = [&](double t, double& lhs_i, double& rhs_i) {
    double s = M.s(t);
    if (s < 1e-14) {  // poles carry zero measure
      lhs_i = rhs_i = 0.0;
      return;
    }
    double cp = M.cp(t), sp = M.sp(t);
    double speed2 = cp * cp + sp * sp;
    double speed = std::sqrt(speed2);
    double w = std::pow(s, M.n - 2.0) * speed;
    double kappa1 = (M.spp(t) * cp - M.cpp(t) * sp) / (speed2 * speed);
    double kappa2 = -cp / (s * speed);
    double H = (kappa1 + (M.n - 2.0) * kappa2) / nm1;
    double ph = phi(t);
    double gph = std::abs(dphi(t)) / speed;
    lhs_i = std::pow(std::abs(ph), qstar) * w;
    rhs_i = (std::pow(gph, q) + std::pow(std::abs(H * ph), q)) * w;
  };

  if (quad_cells % 2) ++quad_cells;
  double h = kPi / quad_cells;
  double lhs_sum = 0.0, rhs_sum = 0.0;
  for (int i = 0; i <= quad_cells; ++i) {
    double li, ri;
    eval(i * h, li, ri);
    double cw = (i == 0 || i == quad_cells) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    lhs_sum += cw * li;
    rhs_sum += cw * ri;
  }
  lhs_sum *= ring * h / 3.0;
  rhs_sum *= ring * h / 3.0;

  SurfaceCheck chk;
  chk.qstar = qstar;
  chk.lhs = std::pow(lhs_sum, 1.0 / qstar);
  chk.rhs = std::pow(rhs_sum, 1.0 / q);
  chk.minimal_A = chk.rhs > 0.0 ? chk.lhs / chk.rhs : 0.0;
  return chk;
}

namespace {

inline std::array<double, 3> sub(std::array<double, 3> a, std::array<double, 3> b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline std::array<double, 3> scale(std::array<double, 3> a, double c) {
  return {a[0] * c, a[1] * c, a[2] * c};
}
inline double dot(std::array<double, 3> a, std::array<double, 3> b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline std::array<double, 3> cross(std::array<double, 3> a, std::array<double, 3> b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

SurfaceCheck michael_simon_chart(const ChartSurface& M,
                                 const std::function<double(double, double)>& phi, double q) {
  if (q < 1.0 || q >= 2.0) throw std::invalid_argument("michael_simon: need 1 <= q < 2 in R^3");
  double qstar = 2.0 * q / (2.0 - q);
  const double d = 1e-4;
  int G = M.grid;
  double cellw = 1.0 / G;
  double lhs_sum = 0.0, rhs_sum = 0.0;
  for (int i = 0; i < G; ++i) {
    double u = (i + 0.5) * cellw;
    for (int j = 0; j < G; ++j) {
      double v = (j + 0.5) * cellw;
      auto Xc = M.X(u, v);
      auto Xu = scale(sub(M.X(u + d, v), M.X(u - d, v)), 0.5 / d);
      auto Xv = scale(sub(M.X(u, v + d), M.X(u, v - d)), 0.5 / d);
      auto Xuu = scale(sub(sub(M.X(u + d, v), scale(Xc, 2.0)), scale(M.X(u - d, v), -1.0)),
                       1.0 / (d * d));
      auto Xvv = scale(sub(sub(M.X(u, v + d), scale(Xc, 2.0)), scale(M.X(u, v - d), -1.0)),
                       1.0 / (d * d));
      auto Xuv = scale(sub(sub(M.X(u + d, v + d), M.X(u + d, v - d)),
                           sub(M.X(u - d, v + d), M.X(u - d, v - d))),
                       0.25 / (d * d));
      double E = dot(Xu, Xu), F = dot(Xu, Xv), Gm = dot(Xv, Xv);
      double det = E * Gm - F * F;
      auto nrm = cross(Xu, Xv);
      double nlen = std::sqrt(dot(nrm, nrm));
      nrm = scale(nrm, 1.0 / nlen);
      double L = dot(Xuu, nrm), Mm = dot(Xuv, nrm), N = dot(Xvv, nrm);
      double H = (E * N - 2.0 * F * Mm + Gm * L) / (2.0 * det);
      double dsig = std::sqrt(det);
      double ph = phi(u, v);
      double pu = (phi(u + d, v) - phi(u - d, v)) * 0.5 / d;
      double pv = (phi(u, v + d) - phi(u, v - d)) * 0.5 / d;
      double grad2 = (Gm * pu * pu - 2.0 * F * pu * pv + E * pv * pv) / det;
      double gph = std::sqrt(std::max(grad2, 0.0));
      lhs_sum += std::pow(std::abs(ph), qstar) * dsig;
      rhs_sum += (std::pow(gph, q) + std::pow(std::abs(H * ph), q)) * dsig;
    }
  }
  lhs_sum *= cellw * cellw;
  rhs_sum *= cellw * cellw;
  SurfaceCheck chk;
  chk.qstar = qstar;
  chk.lhs = std::pow(lhs_sum, 1.0 / qstar);
  chk.rhs = std::pow(rhs_sum, 1.0 / q);
  chk.minimal_A = chk.rhs > 0.0 ? chk.lhs / chk.rhs : 0.0;
  return chk;
}

Report michael_simon_report(const SurfaceCheck& chk, int n, double A, double tol,
                            double resolution) {
  if (A < 0.0) A = std::pow(sphere_area(n), -1.0 / (n - 1.0));
  Report rep;
  rep.name = "michael-simon";
  rep.lhs = chk.lhs;
  rep.rhs = A * chk.rhs;
  rep.constant = A;
  rep.resolution = resolution;
  rep.note = "minimal_A=" + std::to_string(chk.minimal_A);
  finalize_report(rep, tol);
  return rep;
}

}  // namespace pstable
