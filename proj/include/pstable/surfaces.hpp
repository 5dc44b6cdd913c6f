#pragma once

#include <array>
#include <functional>

#include "pstable/report.hpp"

namespace pstable {

// Closed hypersurface of revolution in R^n: theta in [0, pi] parametrizes
// points (c(theta), s(theta) * omega), omega on the unit sphere of R^{n-1}.
// s > 0 on (0, pi) and s(0) = s(pi) = 0 close the surface at the poles.
struct ZonalSurface {
  int n = 3;
  std::function<double(double)> c, cp, cpp;
  std::function<double(double)> s, sp, spp;
};

ZonalSurface make_sphere(int n, double R);
// Ellipsoid of revolution in R^4 with semi-axes (a, b, b, b).
ZonalSurface make_ellipsoid4(double a, double b);

// Doubly periodic chart surface in R^3; fundamental forms are differenced
// from the chart map directly, independent of the quadrature grid.
struct ChartSurface {
  std::function<std::array<double, 3>(double, double)> X;  // (u,v) in [0,1)^2
  int grid = 256;
};
ChartSurface make_torus(double R0, double r0);

struct SurfaceCheck {
  double lhs = 0.0;        // (int |phi|^{q*} dsigma)^{1/q*}
  double rhs = 0.0;        // (int |grad phi|^q + |H phi|^q dsigma)^{1/q}
  double minimal_A = 0.0;  // lhs / rhs
  double qstar = 0.0;
};

// phi and d(phi)/d(theta) as functions of theta.
SurfaceCheck michael_simon_zonal(const ZonalSurface& M, const std::function<double(double)>& phi,
                                 const std::function<double(double)>& dphi, double q,
                                 int quad_cells = 4096);
// phi as a function of the chart coordinates.
SurfaceCheck michael_simon_chart(const ChartSurface& M,
                                 const std::function<double(double, double)>& phi, double q);

// pass iff minimal_A <= A (1 + tol); A < 0 selects the sphere-equality value
// |dB_1|^{-1/(n-1)} for the ambient dimension.
Report michael_simon_report(const SurfaceCheck& chk, int n, double A = -1.0, double tol = 1e-2,
                            double resolution = 0.0);

}  // namespace pstable
