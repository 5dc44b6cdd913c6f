#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace pstable {

// Region selector for norms/integrals restricted by the field's own levels.
struct Region {
  enum class Kind { All, SubLevel, SuperLevel };
  Kind kind = Kind::All;
  double level = 0.0;

  static Region all() { return {}; }
  static Region sublevel(double s) { return {Kind::SubLevel, s}; }    // f <= s
  static Region superlevel(double s) { return {Kind::SuperLevel, s}; }  // f > s
};

// Radial profile on [0, Rmax] with uniform nodes r_i = i h. The ambient
// dimension n enters only through the |dB_1| r^{n-1} volume weight; one
// radial mesh therefore emulates any dimension.
struct RadialField {
  int n = 2;
  double Rmax = 1.0;
  std::vector<double> values;

  std::size_t nodes() const { return values.size(); }
  double h() const { return Rmax / static_cast<double>(values.size() - 1); }
  double r(std::size_t i) const { return h() * static_cast<double>(i); }
  double max_abs() const;
  double domain_measure() const;  // |B_Rmax| in R^n
};

// Uniform d-dimensional grid (d = 2 or 3), cell-centered: node (i,j,k) sits
// at origin + (i+1/2, j+1/2, k+1/2) h, so each node owns an h^d cell and the
// cells tile the box exactly. mask_radius > 0 restricts the domain to the
// centered ball (weights hold the per-cell occupancy); 0 keeps the whole box.
// Values are extended by zero outside the domain, matching the zero-trace
// function class all the checks quantify over.
struct CartesianField {
  int d = 3;
  std::array<int, 3> shape{1, 1, 1};
  double h = 1.0;
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  double mask_radius = 0.0;
  std::vector<double> values;
  std::vector<double> weight;  // quadrature occupancy in [0,1]

  std::size_t nodes() const { return values.size(); }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * shape[1] + j) * shape[2] + k;
  }
  std::array<double, 3> coord(int i, int j, int k) const;
  double max_abs() const;
  double domain_measure() const;  // sum of weights * h^d
  double cell_volume() const;
};

// Centered box of given per-axis extent; sampler maps node coords to values.
CartesianField make_box_field(int d, std::array<int, 3> shape, double extent,
                              const std::function<double(std::array<double, 3>)>& sampler);
// Centered ball of given radius inside a snug box.
CartesianField make_ball_field(int d, int nodes_per_axis, double radius,
                               const std::function<double(std::array<double, 3>)>& sampler);

// --- differential operators -------------------------------------------------

// Per-node gradient components. Central differences inside, one-sided
// second-order stencils on the grid boundary.
struct VectorField {
  std::array<std::vector<double>, 3> comp;
};
VectorField gradient(const CartesianField& f);

// Symmetric Hessian per node: comp order xx, yy, zz, xy, xz, yz. Built as the
// symmetrized Jacobian of gradient(), so quadratics are exact.
struct HessianField {
  std::array<std::vector<double>, 6> comp;
};
HessianField hessian(const CartesianField& f);

// Nodal derivative of a radial profile (central, one-sided at the ends).
std::vector<double> radial_derivative(const RadialField& f);

// --- distribution function ---------------------------------------------------

struct DistributionFunction {
  std::vector<double> thresholds;
  std::vector<double> volume;  // V(t) = |{|f| > t}|
};

DistributionFunction distribution(const RadialField& f, const std::vector<double>& thresholds);
DistributionFunction distribution(const CartesianField& f, const std::vector<double>& thresholds);

// Cached level-set measure evaluator for one grid field: per-node gradient
// scale fixes the smearing half-width of the regularized Heaviside, so every
// level query is one weighted sweep.
class LevelMeasure {
 public:
  explicit LevelMeasure(const CartesianField& f);
  // |{|f| > t}| (0 exactly once t reaches max|f|).
  double volume_above(double t) const;
  // integral of g |grad f| over {|f| <= t}; g given per node.
  double flux_below(double t, const std::vector<double>& g) const;
  const std::vector<double>& gradnorm() const { return gradnorm_; }

 private:
  const CartesianField& f_;
  std::vector<double> gradnorm_;
  std::vector<double> eps_;  // smear half-width per node
  double max_abs_ = 0.0;
};

// --- norms and truncation ----------------------------------------------------

RadialField truncate(const RadialField& f, double s);
CartesianField truncate(const CartesianField& f, double s);

// L^r norm over the (optionally level-restricted) domain; r = infinity gives
// the max. Radial path integrates |f|^r with exact cell splitting at region
// crossings; grids use the smeared indicator.
double lp_norm(const RadialField& f, double r, Region region = Region::all());
double lp_norm(const CartesianField& f, double r, Region region = Region::all());

// --- radial quadrature helpers ----------------------------------------------

// Trapezoid rule of a nodal integrand with the |dB_1| r^{n-1} weight.
double integrate_radial_nodes(const RadialField& f, const std::function<double(std::size_t)>& g);

// Cell rule for slope integrands: g(r_mid, slope) weighted by the exact cell
// moment |dB_1| (b^n - a^n)/n. First midpoint sits at h/2, which is what keeps
// singular weights r^{-q} (q < n-1) integrable without a special rule.
double integrate_radial_cells(const RadialField& f,
                              const std::function<double(double, double)>& g);

// Same restricted to {f <= s} / {f > s} with exact linear cell splitting.
double integrate_radial_cells_region(const RadialField& f, Region region,
                                     const std::function<double(double, double)>& g);

// --- snapshot IO ---------------------------------------------------------------

struct FieldSnapshot {
  bool radial = true;
  RadialField rad;
  CartesianField cart;
};

void save_pfield(const std::string& path, const RadialField& f);
void save_pfield(const std::string& path, const CartesianField& f);
FieldSnapshot load_pfield(const std::string& path);

}  // namespace pstable
