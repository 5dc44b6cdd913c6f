#include "pstable/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pstable/constants.hpp"

namespace pstable {

namespace {

// Regularized Heaviside: fraction of mass above the level for x = (v-t)/eps,
// C^2 ramp on [-1,1] (integral of the quartic kernel 15/16 (1-x^2)^2).
double smear_above(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 0.5 + (15.0 / 16.0) * (x - 2.0 * x * x * x / 3.0 + std::pow(x, 5) / 5.0);
}

double slab_occupancy(double signed_dist, double h) {
  return std::clamp(0.5 + signed_dist / h, 0.0, 1.0);
}

}  // namespace

double RadialField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double RadialField::domain_measure() const {
  return ball_volume(n) * std::pow(Rmax, n);
}

std::array<double, 3> CartesianField::coord(int i, int j, int k) const {
  std::array<int, 3> idx{i, j, k};
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) x[a] = origin[a] + (idx[a] + 0.5) * h;
  return x;
}

double CartesianField::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (weight[i] > 0.0) m = std::max(m, std::abs(values[i]));
  return m;
}

double CartesianField::cell_volume() const { return std::pow(h, d); }

double CartesianField::domain_measure() const {
  double s = 0.0;
  for (double w : weight) s += w;
  return s * cell_volume();
}

CartesianField make_box_field(int d, std::array<int, 3> shape, double extent,
                              const std::function<double(std::array<double, 3>)>& sampler) {
  CartesianField f;
  f.d = d;
  f.shape = shape;
  for (int a = d; a < 3; ++a) f.shape[a] = 1;
  int longest = *std::max_element(f.shape.begin(), f.shape.begin() + d);
  f.h = extent / longest;
  for (int a = 0; a < d; ++a) f.origin[a] = -0.5 * f.shape[a] * f.h;
  std::size_t total = static_cast<std::size_t>(f.shape[0]) * f.shape[1] * f.shape[2];
  f.values.resize(total);
  f.weight.assign(total, 1.0);
  for (int i = 0; i < f.shape[0]; ++i)
    for (int j = 0; j < f.shape[1]; ++j)
      for (int k = 0; k < f.shape[2]; ++k)
        f.values[f.index(i, j, k)] = sampler(f.coord(i, j, k));
  return f;
}

CartesianField make_ball_field(int d, int nodes_per_axis, double radius,
                               const std::function<double(std::array<double, 3>)>& sampler) {
  CartesianField f;
  f.d = d;
  f.mask_radius = radius;
  for (int a = 0; a < d; ++a) f.shape[a] = nodes_per_axis;
  for (int a = d; a < 3; ++a) f.shape[a] = 1;
  // Three cells of margin so the occupancy ramp never touches the box edge.
  f.h = 2.0 * radius / (nodes_per_axis - 3);
  for (int a = 0; a < d; ++a) f.origin[a] = -0.5 * f.shape[a] * f.h;
  std::size_t total = static_cast<std::size_t>(f.shape[0]) * f.shape[1] * f.shape[2];
  f.values.assign(total, 0.0);
  f.weight.assign(total, 0.0);
  for (int i = 0; i < f.shape[0]; ++i)
    for (int j = 0; j < f.shape[1]; ++j)
      for (int k = 0; k < f.shape[2]; ++k) {
        auto x = f.coord(i, j, k);
        double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        std::size_t id = f.index(i, j, k);
        f.weight[id] = slab_occupancy(radius - rho, f.h);
        f.values[id] = f.weight[id] > 0.0 ? sampler(x) : 0.0;
      }
  return f;
}

// --- derivatives -------------------------------------------------------------

namespace {

// Second-order derivative of `v` along `axis`, one-sided at the grid edge.
std::vector<double> derivative_along(const CartesianField& f, const std::vector<double>& v,
                                     int axis) {
  std::vector<double> out(v.size(), 0.0);
  int na = f.shape[axis];
  if (na < 3) return out;
  std::array<int, 3> step{f.shape[1] * f.shape[2], f.shape[2], 1};
  int s = step[axis];
  double inv2h = 1.0 / (2.0 * f.h);
  for (int i = 0; i < f.shape[0]; ++i)
    for (int j = 0; j < f.shape[1]; ++j)
      for (int k = 0; k < f.shape[2]; ++k) {
        std::array<int, 3> idx{i, j, k};
        std::size_t id = f.index(i, j, k);
        int a = idx[axis];
        if (a == 0)
          out[id] = (-3.0 * v[id] + 4.0 * v[id + s] - v[id + 2 * s]) * inv2h;
        else if (a == na - 1)
          out[id] = (3.0 * v[id] - 4.0 * v[id - s] + v[id - 2 * s]) * inv2h;
        else
          out[id] = (v[id + s] - v[id - s]) * inv2h;
      }
  return out;
}

}  // namespace

VectorField gradient(const CartesianField& f) {
  VectorField g;
  for (int a = 0; a < 3; ++a)
    g.comp[a] = a < f.d ? derivative_along(f, f.values, a)
                        : std::vector<double>(f.values.size(), 0.0);
  return g;
}

HessianField hessian(const CartesianField& f) {
  VectorField g = gradient(f);
  HessianField H;
  std::size_t nn = f.values.size();
  for (auto& c : H.comp) c.assign(nn, 0.0);
  // jac[a][b]: derivative of g_b along axis a
  std::array<std::array<std::vector<double>, 3>, 3> jac;
  for (int a = 0; a < f.d; ++a)
    for (int b = 0; b < f.d; ++b) jac[a][b] = derivative_along(f, g.comp[b], a);
  auto sym = [&](int a, int b, int slot) {
    if (a >= f.d || b >= f.d) return;
    for (std::size_t i = 0; i < nn; ++i)
      H.comp[slot][i] = 0.5 * (jac[a][b][i] + jac[b][a][i]);
  };
  sym(0, 0, 0);
  sym(1, 1, 1);
  sym(2, 2, 2);
  sym(0, 1, 3);
  sym(0, 2, 4);
  sym(1, 2, 5);
  return H;
}

std::vector<double> radial_derivative(const RadialField& f) {
  std::size_t m = f.values.size();
  std::vector<double> d(m, 0.0);
  if (m < 3) return d;
  double inv2h = 1.0 / (2.0 * f.h());
  const auto& v = f.values;
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv2h;
  d[m - 1] = (3.0 * v[m - 1] - 4.0 * v[m - 2] + v[m - 3]) * inv2h;
  for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (v[i + 1] - v[i - 1]) * inv2h;
  return d;
}

// --- distribution ------------------------------------------------------------

DistributionFunction distribution(const RadialField& f, const std::vector<double>& thresholds) {
  DistributionFunction df;
  df.thresholds = thresholds;
  df.volume.reserve(thresholds.size());
  double area = sphere_area(f.n);
  double n = f.n;
  std::size_t m = f.values.size();
  for (double t : thresholds) {
    double vol = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      double a0 = std::abs(f.values[i]), a1 = std::abs(f.values[i + 1]);
      double ra = f.r(i), rb = f.r(i + 1);
      bool in0 = a0 > t, in1 = a1 > t;
      double lo = ra, hi = rb;
      if (!in0 && !in1) continue;
      if (in0 != in1) {
        double rc = ra + (rb - ra) * (t - a0) / (a1 - a0);
        if (in0)
          hi = rc;
        else
          lo = rc;
      }
      vol += (std::pow(hi, n) - std::pow(lo, n)) / n * area;
    }
    df.volume.push_back(vol);
  }
  return df;
}

LevelMeasure::LevelMeasure(const CartesianField& f) : f_(f) {
  VectorField g = gradient(f);
  std::size_t nn = f.values.size();
  gradnorm_.resize(nn);
  eps_.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    double gx = g.comp[0][i], gy = g.comp[1][i], gz = g.comp[2][i];
    gradnorm_[i] = std::sqrt(gx * gx + gy * gy + gz * gz);
    eps_[i] = 1.5 * f.h * gradnorm_[i];
  }
  max_abs_ = f.max_abs();
}

double LevelMeasure::volume_above(double t) const {
  if (t >= max_abs_) return 0.0;
  double cell = f_.cell_volume();
  double sum = 0.0;
  for (std::size_t i = 0; i < f_.values.size(); ++i) {
    if (f_.weight[i] == 0.0) continue;
    double v = std::abs(f_.values[i]);
    double w = eps_[i] > 1e-300 ? smear_above((v - t) / eps_[i]) : (v > t ? 1.0 : 0.0);
    sum += w * f_.weight[i];
  }
  return sum * cell;
}

double LevelMeasure::flux_below(double t, const std::vector<double>& g) const {
  double cell = f_.cell_volume();
  double sum = 0.0;
  for (std::size_t i = 0; i < f_.values.size(); ++i) {
    if (f_.weight[i] == 0.0) continue;
    double v = std::abs(f_.values[i]);
    double above = eps_[i] > 1e-300 ? smear_above((v - t) / eps_[i]) : (v > t ? 1.0 : 0.0);
    sum += (1.0 - above) * g[i] * gradnorm_[i] * f_.weight[i];
  }
  return sum * cell;
}

DistributionFunction distribution(const CartesianField& f, const std::vector<double>& thresholds) {
  LevelMeasure lm(f);
  DistributionFunction df;
  df.thresholds = thresholds;
  df.volume.reserve(thresholds.size());
  for (double t : thresholds) df.volume.push_back(lm.volume_above(t));
  return df;
}

// --- truncation and norms -----------------------------------------------------

RadialField truncate(const RadialField& f, double s) {
  RadialField out = f;
  for (double& v : out.values) v = std::min(s, v);
  return out;
}

CartesianField truncate(const CartesianField& f, double s) {
  CartesianField out = f;
  for (double& v : out.values) v = std::min(s, v);
  return out;
}

namespace {

// Sub-interval of [ra, rb] where the linear interpolant of (v0, v1) satisfies
// the region predicate; returns false if empty.
bool region_span(Region reg, double ra, double rb, double v0, double v1, double& lo, double& hi) {
  lo = ra;
  hi = rb;
  if (reg.kind == Region::Kind::All) return true;
  bool in0, in1;
  if (reg.kind == Region::Kind::SubLevel) {
    in0 = v0 <= reg.level;
    in1 = v1 <= reg.level;
  } else {
    in0 = v0 > reg.level;
    in1 = v1 > reg.level;
  }
  if (!in0 && !in1) return false;
  if (in0 != in1) {
    double rc = ra + (rb - ra) * (reg.level - v0) / (v1 - v0);
    if (in0)
      hi = rc;
    else
      lo = rc;
  }
  return true;
}

bool node_in_region(Region reg, double v) {
  switch (reg.kind) {
    case Region::Kind::All: return true;
    case Region::Kind::SubLevel: return v <= reg.level;
    case Region::Kind::SuperLevel: return v > reg.level;
  }
  return true;
}

}  // namespace

double lp_norm(const RadialField& f, double r, Region region) {
  std::size_t m = f.values.size();
  if (std::isinf(r)) {
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (node_in_region(region, f.values[i])) best = std::max(best, std::abs(f.values[i]));
    return best;
  }
  double area = sphere_area(f.n);
  double n = f.n;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double lo, hi;
    if (!region_span(region, f.r(i), f.r(i + 1), f.values[i], f.values[i + 1], lo, hi)) continue;
    if (hi <= lo) continue;
    double rmid = 0.5 * (lo + hi);
    double h = f.h();
    double vmid = f.values[i] + (f.values[i + 1] - f.values[i]) * (rmid - f.r(i)) / h;
    sum += std::pow(std::abs(vmid), r) * (std::pow(hi, n) - std::pow(lo, n)) / n * area;
  }
  return std::pow(sum, 1.0 / r);
}

double lp_norm(const CartesianField& f, double r, Region region) {
  if (std::isinf(r)) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      if (f.weight[i] > 0.0 && node_in_region(region, f.values[i]))
        best = std::max(best, std::abs(f.values[i]));
    return best;
  }
  double cell = f.cell_volume();
  double sum = 0.0;
  if (region.kind == Region::Kind::All) {
    for (std::size_t i = 0; i < f.values.size(); ++i)
      if (f.weight[i] > 0.0) sum += std::pow(std::abs(f.values[i]), r) * f.weight[i];
    return std::pow(sum * cell, 1.0 / r);
  }
  // Smeared region indicator, same kernel scale as the level-set measures.
  VectorField g = gradient(f);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.weight[i] == 0.0) continue;
    double gx = g.comp[0][i], gy = g.comp[1][i], gz = g.comp[2][i];
    double eps = 1.5 * f.h * std::sqrt(gx * gx + gy * gy + gz * gz);
    double above = eps > 1e-300 ? smear_above((f.values[i] - region.level) / eps)
                                : (f.values[i] > region.level ? 1.0 : 0.0);
    double ind = region.kind == Region::Kind::SuperLevel ? above : 1.0 - above;
    sum += std::pow(std::abs(f.values[i]), r) * ind * f.weight[i];
  }
  return std::pow(sum * cell, 1.0 / r);
}

// --- radial quadrature ---------------------------------------------------------

double integrate_radial_nodes(const RadialField& f, const std::function<double(std::size_t)>& g) {
  std::size_t m = f.values.size();
  double area = sphere_area(f.n);
  double n = f.n;
  double h = f.h();
  double sum = 0.0;
  double prev = g(0) * std::pow(f.r(0), n - 1.0);
  for (std::size_t i = 1; i < m; ++i) {
    double cur = g(i) * std::pow(f.r(i), n - 1.0);
    sum += 0.5 * (prev + cur) * h;
    prev = cur;
  }
  return sum * area;
}

double integrate_radial_cells(const RadialField& f,
                              const std::function<double(double, double)>& g) {
  return integrate_radial_cells_region(f, Region::all(), g);
}

double integrate_radial_cells_region(const RadialField& f, Region region,
                                     const std::function<double(double, double)>& g) {
  std::size_t m = f.values.size();
  double area = sphere_area(f.n);
  double n = f.n;
  double h = f.h();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double slope = (f.values[i + 1] - f.values[i]) / h;
    double lo, hi;
    if (!region_span(region, f.r(i), f.r(i + 1), f.values[i], f.values[i + 1], lo, hi)) continue;
    if (hi <= lo) continue;
    sum += g(0.5 * (lo + hi), slope) * (std::pow(hi, n) - std::pow(lo, n)) / n * area;
  }
  return sum;
}

// --- snapshot IO ----------------------------------------------------------------

namespace {

void write_values(std::FILE* fp, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    std::fprintf(fp, "%.17g%c", v[i], (i % 8 == 7 || i + 1 == v.size()) ? '\n' : ' ');
}

struct HeaderFields {
  std::string kind;
  int n = 0, d = 0;
  std::array<int, 3> shape{1, 1, 1};
  double h = 0.0, Rmax = 0.0;
};

HeaderFields parse_header(const std::string& line) {
  std::istringstream ss(line);
  std::string magic, ver;
  ss >> magic >> ver;
  if (magic != "pfield" || ver != "v1") throw std::runtime_error("not a pfield v1 file");
  HeaderFields hf;
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "kind") hf.kind = val;
    else if (key == "n") hf.n = std::stoi(val);
    else if (key == "d") hf.d = std::stoi(val);
    else if (key == "h") hf.h = std::stod(val);
    else if (key == "Rmax") hf.Rmax = std::stod(val);
    else if (key == "shape") {
      std::istringstream sh(val);
      std::string part;
      int a = 0;
      while (std::getline(sh, part, ',') && a < 3) hf.shape[a++] = std::stoi(part);
    }
  }
  return hf;
}

}  // namespace

void save_pfield(const std::string& path, const RadialField& f) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot open " + path);
  std::fprintf(fp, "pfield v1 kind=radial n=%d d=1 shape=%zu h=%.17g Rmax=%.17g\n", f.n,
               f.values.size(), f.h(), f.Rmax);
  write_values(fp, f.values);
  std::fclose(fp);
}

void save_pfield(const std::string& path, const CartesianField& f) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot open " + path);
  std::fprintf(fp, "pfield v1 kind=cartesian n=%d d=%d shape=", f.d, f.d);
  for (int a = 0; a < f.d; ++a) std::fprintf(fp, "%d%c", f.shape[a], a + 1 < f.d ? ',' : ' ');
  std::fprintf(fp, "h=%.17g Rmax=%.17g\n", f.h, f.mask_radius);
  write_values(fp, f.values);
  std::fclose(fp);
}

FieldSnapshot load_pfield(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  HeaderFields hf = parse_header(line);
  FieldSnapshot snap;
  if (hf.kind == "radial") {
    snap.radial = true;
    snap.rad.n = hf.n;
    snap.rad.Rmax = hf.Rmax;
    std::size_t count = hf.shape[0];
    snap.rad.values.reserve(count);
    double v;
    while (in >> v) snap.rad.values.push_back(v);
    if (snap.rad.values.size() != count)
      throw std::runtime_error("pfield value count mismatch in " + path);
  } else if (hf.kind == "cartesian") {
    snap.radial = false;
    CartesianField& f = snap.cart;
    f.d = hf.d;
    f.shape = hf.shape;
    for (int a = f.d; a < 3; ++a) f.shape[a] = 1;
    f.h = hf.h;
    f.mask_radius = hf.Rmax;
    for (int a = 0; a < f.d; ++a) f.origin[a] = -0.5 * f.shape[a] * f.h;
    std::size_t total = static_cast<std::size_t>(f.shape[0]) * f.shape[1] * f.shape[2];
    f.values.reserve(total);
    double v;
    while (in >> v) f.values.push_back(v);
    if (f.values.size() != total)
      throw std::runtime_error("pfield value count mismatch in " + path);
    f.weight.assign(total, 1.0);
    if (f.mask_radius > 0.0) {
      for (int i = 0; i < f.shape[0]; ++i)
        for (int j = 0; j < f.shape[1]; ++j)
          for (int k = 0; k < f.shape[2]; ++k) {
            auto x = f.coord(i, j, k);
            double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            f.weight[f.index(i, j, k)] = slab_occupancy(f.mask_radius - rho, f.h);
          }
    }
  } else {
    throw std::runtime_error("unknown pfield kind: " + hf.kind);
  }
  return snap;
}

}  // namespace pstable
