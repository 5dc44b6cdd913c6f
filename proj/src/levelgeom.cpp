#include "pstable/levelgeom.hpp"

#include <algorithm>
#include <cmath>

#include "pstable/constants.hpp"

namespace pstable {

LevelGeomField level_geometry(const CartesianField& f, double p, double q, double eps_grad) {
  VectorField g = gradient(f);
  HessianField Hs = hessian(f);
  std::size_t nn = f.nodes();
  LevelGeomField out;
  out.p = p;
  out.q = q;
  out.gradnorm.assign(nn, 0.0);
  out.H.assign(nn, 0.0);
  out.tgrad.assign(nn, 0.0);
  out.valid.assign(nn, 0);

  double gmax = 0.0;
  for (std::size_t i = 0; i < nn; ++i) {
    double gx = g.comp[0][i], gy = g.comp[1][i], gz = g.comp[2][i];
    out.gradnorm[i] = std::sqrt(gx * gx + gy * gy + gz * gz);
    gmax = std::max(gmax, out.gradnorm[i]);
  }
  out.eps_grad = eps_grad >= 0.0 ? eps_grad : 1e-6 * gmax;

  double nm1 = f.d - 1.0;
  for (std::size_t i = 0; i < nn; ++i) {
    double G = out.gradnorm[i];
    if (G <= out.eps_grad || f.weight[i] == 0.0) continue;
    out.valid[i] = 1;
    double gx = g.comp[0][i], gy = g.comp[1][i], gz = g.comp[2][i];
    double hxx = Hs.comp[0][i], hyy = Hs.comp[1][i], hzz = Hs.comp[2][i];
    double hxy = Hs.comp[3][i], hxz = Hs.comp[4][i], hyz = Hs.comp[5][i];
    // w = Hess * grad
    double wx = hxx * gx + hxy * gy + hxz * gz;
    double wy = hxy * gx + hyy * gy + hyz * gz;
    double wz = hxz * gx + hyz * gy + hzz * gz;
    double trace = hxx + hyy + hzz;
    double wg = wx * gx + wy * gy + wz * gz;
    // -(n-1) H = div(grad f / |grad f|) = trace/G - <Hess grad, grad>/G^3
    out.H[i] = (wg / (G * G * G) - trace / G) / nm1;
    // grad |grad f| = Hess grad / G; remove the normal component
    double nx = gx / G, ny = gy / G, nz = gz / G;
    double dn = (wx * nx + wy * ny + wz * nz) / G;
    double tx = wx / G - dn * nx, ty = wy / G - dn * ny, tz = wz / G - dn * nz;
    double tG = std::sqrt(tx * tx + ty * ty + tz * tz);
    // chain rule for |grad_T G^{p/q}| = (p/q) G^{p/q - 1} |grad_T G|
    out.tgrad[i] = (p / q) * std::pow(G, p / q - 1.0) * tG;
  }
  return out;
}

namespace {

Functional assemble(const CartesianField& f, const LevelGeomField& lg, double p, double q,
                    bool with_tangential) {
  Functional F;
  F.p = p;
  F.q = q;
  double pprime = conjugate_exponent(p);
  double cell = f.cell_volume();
  double tang = 0.0, curv = 0.0;
  bool any_valid = false;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    if (!lg.valid[i]) continue;
    any_valid = true;
    double w = f.weight[i] * cell;
    if (with_tangential) tang += std::pow(lg.tgrad[i] / pprime, q) * w;
    curv += std::pow(std::abs(lg.H[i]), q) * std::pow(lg.gradnorm[i], p) * w;
  }
  F.tangential_part = tang;
  F.curvature_part = curv;
  F.value = std::pow(tang + curv, 1.0 / p);
  F.all_invalid = !any_valid;
  return F;
}

}  // namespace

Functional geometric_functional(const CartesianField& f, double p, double q, double eps_grad) {
  LevelGeomField lg = level_geometry(f, p, q, eps_grad);
  return assemble(f, lg, p, q, true);
}

Functional geometric_functional_tilde(const CartesianField& f, double p, double q,
                                      double eps_grad) {
  LevelGeomField lg = level_geometry(f, p, q, eps_grad);
  return assemble(f, lg, p, q, false);
}

Functional geometric_functional(const RadialField& f, double p, double q) {
  Functional F;
  F.p = p;
  F.q = q;
  F.curvature_part = integrate_radial_cells(
      f, [&](double r, double s) { return std::pow(r, -q) * std::pow(std::abs(s), p); });
  F.tangential_part = 0.0;
  F.value = std::pow(F.curvature_part, 1.0 / p);
  return F;
}

Functional geometric_functional_tilde(const RadialField& f, double p, double q) {
  return geometric_functional(f, p, q);
}

double hessian_majorant(const CartesianField& f, double p, double q) {
  HessianField Hs = hessian(f);
  LevelGeomField lg = level_geometry(f, p, q);
  double cell = f.cell_volume();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    if (!lg.valid[i]) continue;
    double fro2 = 0.0;
    for (int c = 0; c < 3; ++c) fro2 += Hs.comp[c][i] * Hs.comp[c][i];
    for (int c = 3; c < 6; ++c) fro2 += 2.0 * Hs.comp[c][i] * Hs.comp[c][i];
    sum += std::pow(fro2, 0.5 * q) * std::pow(lg.gradnorm[i], p - q) * f.weight[i] * cell;
  }
  return sum;
}

double domination_constant(const CartesianField& f, double p, double q) {
  HessianField Hs = hessian(f);
  LevelGeomField lg = level_geometry(f, p, q);
  double pprime = conjugate_exponent(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    if (!lg.valid[i]) continue;
    double fro2 = 0.0;
    for (int c = 0; c < 3; ++c) fro2 += Hs.comp[c][i] * Hs.comp[c][i];
    for (int c = 3; c < 6; ++c) fro2 += 2.0 * Hs.comp[c][i] * Hs.comp[c][i];
    double denom = std::pow(fro2, 0.5 * q) * std::pow(lg.gradnorm[i], p - q);
    if (denom < 1e-300) continue;
    double numer = std::pow(lg.tgrad[i] / pprime, q) +
                   std::pow(std::abs(lg.H[i]), q) * std::pow(lg.gradnorm[i], p);
    worst = std::max(worst, numer / denom);
  }
  return worst;
}

// --- surface integrals --------------------------------------------------------

double coarea_density(const CartesianField& f, double t, double a, double window) {
  LevelMeasure lm(f);
  double vmax = f.max_abs();
  if (t <= 0.0 || t >= vmax) return 0.0;
  double delta = window > 0.0 ? window : 2.0 * vmax / 256.0;
  std::vector<double> g(f.nodes());
  for (std::size_t i = 0; i < f.nodes(); ++i)
    g[i] = std::pow(std::max(lm.gradnorm()[i], 1e-300), a - 1.0);
  double hi = lm.flux_below(t + delta, g);
  double lo = lm.flux_below(t - delta, g);
  return (hi - lo) / (2.0 * delta);
}

double coarea_density(const RadialField& f, double t, double a) {
  if (t < 0.0) return 0.0;
  double area = sphere_area(f.n);
  double h = f.h();
  double sum = 0.0;
  std::size_t m = f.values.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double v0 = std::abs(f.values[i]), v1 = std::abs(f.values[i + 1]);
    if ((v0 > t) == (v1 > t)) continue;
    double rc = f.r(i) + h * (t - v0) / (v1 - v0);
    double slope = std::abs(f.values[i + 1] - f.values[i]) / h;
    sum += area * std::pow(rc, f.n - 1.0) * std::pow(slope, a - 1.0);
  }
  return sum;
}

double perimeter(const CartesianField& f, double t, double window) {
  return coarea_density(f, t, 1.0, window);
}

double perimeter(const RadialField& f, double t) { return coarea_density(f, t, 1.0); }

}  // namespace pstable
