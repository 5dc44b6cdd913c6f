#pragma once

#include <cstdint>
#include <vector>

#include "pstable/fields.hpp"

namespace pstable {

// Per-node level-set geometry of a grid field. tgrad is the tangential
// gradient magnitude |grad_T |grad f|^{p/q}| entering the mixed functional;
// nodes with |grad f| <= eps_grad are marked invalid and excluded from
// integrals (they approximate the measure-zero critical set).
struct LevelGeomField {
  double p = 2.0, q = 1.0;
  double eps_grad = 0.0;
  std::vector<double> gradnorm;
  std::vector<double> H;      // mean curvature of the level set through the node
  std::vector<double> tgrad;  // |grad_T |grad f|^{p/q}|
  std::vector<std::uint8_t> valid;
};

// eps_grad < 0 selects the default 1e-6 * max |grad f|.
LevelGeomField level_geometry(const CartesianField& f, double p, double q,
                              double eps_grad = -1.0);

// The weighted level-set functional: value^p integrates
// (tgrad/p')^q + |H|^q |grad f|^p over the domain.
struct Functional {
  double p = 2.0, q = 1.0;
  double value = 0.0;
  double tangential_part = 0.0;
  double curvature_part = 0.0;
  bool all_invalid = false;
};

Functional geometric_functional(const CartesianField& f, double p, double q,
                                double eps_grad = -1.0);
// Radial path: H = 1/r and the tangential term vanishes identically, so
// value^p = integral of r^{-q} |f'|^p over the ball.
Functional geometric_functional(const RadialField& f, double p, double q);

// Variant without the tangential term.
Functional geometric_functional_tilde(const CartesianField& f, double p, double q,
                                      double eps_grad = -1.0);
Functional geometric_functional_tilde(const RadialField& f, double p, double q);

// Quadrature of |D^2 f|^q |grad f|^{p-q} (Frobenius norm), the majorant that
// dominates the functional integrand pointwise.
double hessian_majorant(const CartesianField& f, double p, double q);

// Max over valid nodes of functional-integrand / majorant-integrand: the
// measured domination constant.
double domination_constant(const CartesianField& f, double p, double q);

// Surface integrals over {|f| = t} without meshing the isosurface:
// smoothed-coarea window on grids, exact crossing scan on radial profiles.
// `a` selects the integrand |grad f|^{a-1}; a = 1 is the perimeter.
double coarea_density(const CartesianField& f, double t, double a, double window = -1.0);
double coarea_density(const RadialField& f, double t, double a);
double perimeter(const CartesianField& f, double t, double window = -1.0);
double perimeter(const RadialField& f, double t);

}  // namespace pstable
