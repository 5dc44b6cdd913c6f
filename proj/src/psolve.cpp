#include "pstable/psolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pstable/constants.hpp"

namespace pstable {

namespace {

constexpr double kExpClamp = 700.0;  // keep exp finite while Newton overshoots

double clamped_exp(double u) { return std::exp(std::min(u, kExpClamp)); }

}  // namespace

double Nonlinearity::f(double u) const {
  switch (kind) {
    case Kind::exponential:
      return clamped_exp(u);
    case Kind::power:
      return std::pow(std::max(1.0 + u, 0.0), m);
    case Kind::constant:
      return c;
  }
  return 0.0;
}

double Nonlinearity::fp(double u) const {
  switch (kind) {
    case Kind::exponential:
      return clamped_exp(u);
    case Kind::power:
      return m * std::pow(std::max(1.0 + u, 0.0), m - 1.0);
    case Kind::constant:
      return 0.0;
  }
  return 0.0;
}

double Nonlinearity::G(double u) const {
  switch (kind) {
    case Kind::exponential:
      return clamped_exp(u) - 1.0;
    case Kind::power:
      return (std::pow(std::max(1.0 + u, 0.0), m + 1.0) - 1.0) / (m + 1.0);
    case Kind::constant:
      return c * u;
  }
  return 0.0;
}

Nonlinearity make_exp() { return {Nonlinearity::Kind::exponential, 2.0, 1.0}; }
Nonlinearity make_power(double m) { return {Nonlinearity::Kind::power, m, 1.0}; }
Nonlinearity make_const(double c) { return {Nonlinearity::Kind::constant, 2.0, c}; }

namespace {

// -- mesh-local helpers; everything lives on the uniform grid r_i = i/M -------

struct Mesh {
  int M;
  double h;
  std::vector<double> rmid_pow;  // rmid_i^{n-1}, i = 0..M-1 (face at (i+1/2)h)
  std::vector<double> vol;       // int_{cell i} r^{n-1} dr, i = 0..M-1 (node cells)
};

Mesh make_mesh(int M, int n) {
  Mesh m;
  m.M = M;
  m.h = 1.0 / M;
  m.rmid_pow.resize(M);
  m.vol.resize(M);
  for (int i = 0; i < M; ++i) m.rmid_pow[i] = std::pow((i + 0.5) * m.h, n - 1.0);
  double prev = 0.0;
  for (int i = 0; i < M; ++i) {
    double rhi = i + 1 == M ? 1.0 : (i + 0.5) * m.h;
    double cur = std::pow(rhi, double(n)) / n;
    m.vol[i] = cur - prev;
    prev = cur;
  }
  // node M sits on the boundary; its half cell never enters the interior sum
  return m;
}

double flux_coeff(double eps, double du, double p) {
  return std::pow(eps * eps + du * du, 0.5 * (p - 2.0)) * du;
}
double flux_coeff_deriv(double eps, double du, double p) {
  return std::pow(eps * eps + du * du, 0.5 * (p - 4.0)) *
         (eps * eps + (p - 1.0) * du * du);
}

struct ResidualEval {
  std::vector<double> F;      // interior residuals, i = 0..M-1
  std::vector<double> du;     // face slopes, i = 0..M-1
  double norm = 0.0;          // ||F||_2
  double scale = 0.0;         // ||load||_2 + ||flux||_2, backward-error scale
};

void eval_residual(const Mesh& mesh, const ProblemSpec& spec, const std::vector<double>& u,
                   double lambda, double eps, ResidualEval& out) {
  int M = mesh.M;
  out.F.resize(M);
  out.du.resize(M);
  double prev_flux = 0.0;
  double nrm = 0.0, scl_load = 0.0, scl_flux = 0.0;
  for (int i = 0; i < M; ++i) {
    double unext = i + 1 < M ? u[i + 1] : 0.0;
    double du = (unext - u[i]) / mesh.h;
    out.du[i] = du;
    double flux = mesh.rmid_pow[i] * flux_coeff(eps, du, spec.p);
    double load = lambda * spec.f.f(u[i]) * mesh.vol[i];
    double F = -(flux - prev_flux) - load;
    out.F[i] = F;
    prev_flux = flux;
    nrm += F * F;
    scl_load += load * load;
    scl_flux += flux * flux;
  }
  out.norm = std::sqrt(nrm);
  // relative to the size of the balanced terms, so the attainable floor does
  // not drift upward with mesh refinement (adjacent fluxes nearly cancel)
  out.scale = std::max(std::sqrt(scl_load) + std::sqrt(scl_flux), 1e-300);
}

// Thomas elimination for the tridiagonal Newton step; diag/upper/lower are
// overwritten.
void thomas_solve(std::vector<double>& lo, std::vector<double>& dia, std::vector<double>& up,
                  std::vector<double>& rhs) {
  std::size_t n = dia.size();
  for (std::size_t i = 1; i < n; ++i) {
    double m = lo[i - 1] / dia[i - 1];
    dia[i] -= m * up[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= dia[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / dia[i];
}

double max_abs_slope(const Mesh& mesh, const std::vector<double>& u) {
  double mx = 0.0;
  for (int i = 0; i < mesh.M; ++i) {
    double unext = i + 1 < mesh.M ? u[i + 1] : 0.0;
    mx = std::max(mx, std::abs(unext - u[i]) / mesh.h);
  }
  return mx;
}

struct NewtonResult {
  bool converged = false;
  int iters = 0;
  double eps = 0.0;
  double rel = 0.0;
};

NewtonResult newton_solve(const Mesh& mesh, const ProblemSpec& spec, std::vector<double>& u,
                          double lambda) {
  const int max_iters = 60;
  const double tol = 1e-10;
  int M = mesh.M;
  ResidualEval ev, trial;
  std::vector<double> lo(M - 1), dia(M), up(M - 1), rhs(M), cand(M);
  NewtonResult res;
  for (int it = 0; it < max_iters; ++it) {
    double eps = spec.eps_rel * std::max(1.0, max_abs_slope(mesh, u));
    eval_residual(mesh, spec, u, lambda, eps, ev);
    res.iters = it;
    res.eps = eps;
    res.rel = ev.norm / ev.scale;
    if (res.rel < tol) {
      res.converged = true;
      return res;
    }
    // tridiagonal Jacobian: c_i couples nodes i and i+1 through face i
    std::vector<double> c(M);
    for (int i = 0; i < M; ++i)
      c[i] = mesh.rmid_pow[i] * flux_coeff_deriv(eps, ev.du[i], spec.p) / mesh.h;
    for (int i = 0; i < M; ++i) {
      dia[i] = c[i] + (i > 0 ? c[i - 1] : 0.0) - lambda * spec.f.fp(u[i]) * mesh.vol[i];
      rhs[i] = -ev.F[i];
      if (i + 1 < M) up[i] = -c[i];
      if (i > 0) lo[i - 1] = -c[i - 1];
    }
    thomas_solve(lo, dia, up, rhs);
    double t = 1.0;
    bool stepped = false;
    for (int bt = 0; bt < 30; ++bt) {
      for (int i = 0; i < M; ++i) cand[i] = u[i] + t * rhs[i];
      eval_residual(mesh, spec, cand, lambda, eps, trial);
      if (trial.norm <= (1.0 - 0.5 * t) * ev.norm) {
        u = cand;
        stepped = true;
        break;
      }
      t *= 0.5;
    }
    if (!stepped) return res;
  }
  return res;
}

std::vector<double> torsion_init(const Mesh& mesh, const ProblemSpec& spec, double lambda) {
  // exact p-torsion profile for the frozen source f(0); u = 0 stalls for p > 2
  double amp = std::pow(lambda * spec.f.f(0.0) / spec.n, 1.0 / (spec.p - 1.0)) *
               (spec.p - 1.0) / spec.p;
  std::vector<double> u(mesh.M);
  double expo = spec.p / (spec.p - 1.0);
  for (int i = 0; i < mesh.M; ++i) {
    double r = i * mesh.h;
    u[i] = amp * (1.0 - std::pow(r, expo));
  }
  return u;
}

RadialField wrap_profile(const std::vector<double>& u, int n) {
  RadialField out;
  out.n = n;
  out.Rmax = 1.0;
  out.values.assign(u.begin(), u.end());
  out.values.push_back(0.0);
  return out;
}

double boundary_slope_magnitude(const BranchPoint& pt) {
  // flux conservation: r^{n-1} a(u') at r=1 balances the integrated load
  Mesh mesh = make_mesh(int(pt.u.values.size()) - 1, pt.n);
  double T = 0.0;
  for (int i = 0; i < mesh.M; ++i) T += pt.f.f(pt.u.values[i]) * mesh.vol[i];
  T *= pt.lambda;
  // invert a(s) = (eps^2+s^2)^{(p-2)/2} s = T; a is strictly increasing
  double losl = 0.0, hisl = std::max(1.0, 2.0 * std::pow(T, 1.0 / (pt.p - 1.0)));
  while (flux_coeff(pt.eps_used, hisl, pt.p) < T) hisl *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (losl + hisl);
    (flux_coeff(pt.eps_used, mid, pt.p) < T ? losl : hisl) = mid;
  }
  return 0.5 * (losl + hisl);
}

void fill_norms(BranchPoint& pt) {
  pt.sup_u = pt.u.max_abs();
  double denom = pt.n - pt.p - 2.0;
  pt.crit_norm = denom > 0.0 ? lp_norm(pt.u, pt.n * pt.p / denom)
                             : std::numeric_limits<double>::quiet_NaN();
  double wp = integrate_radial_cells(
      pt.u, [&](double, double s) { return std::pow(std::abs(s), pt.p); });
  pt.w1p_seminorm = std::pow(wp, 1.0 / pt.p);
  pt.l1_f = integrate_radial_nodes(
      pt.u, [&](std::size_t i) { return std::abs(pt.f.f(pt.u.values[i])); });
}

}  // namespace

BranchPoint solve_at(const ProblemSpec& spec, double lambda, const RadialField& init) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_at: lambda must be positive");
  if (spec.p <= 1.0) throw std::invalid_argument("solve_at: p must exceed 1");
  if (spec.f.kind == Nonlinearity::Kind::power && spec.f.m <= spec.p - 1.0)
    throw std::invalid_argument("solve_at: power nonlinearity needs m > p - 1");
  Mesh mesh = make_mesh(spec.M, spec.n);
  std::vector<double> u(mesh.M, 0.0);
  if (!init.values.empty()) {
    if (int(init.values.size()) != mesh.M + 1)
      throw std::invalid_argument("solve_at: init profile must live on the spec mesh");
    for (int i = 0; i < mesh.M; ++i) {
      if (init.values[i] < 0.0) throw std::invalid_argument("solve_at: init must be nonnegative");
      u[i] = init.values[i];
    }
  } else {
    u = torsion_init(mesh, spec, lambda);
  }
  NewtonResult nr = newton_solve(mesh, spec, u, lambda);
  if (!nr.converged)
    throw NoConvergence("solve_at: Newton stalled at lambda = " + std::to_string(lambda));
  BranchPoint pt;
  pt.n = spec.n;
  pt.p = spec.p;
  pt.f = spec.f;
  pt.lambda = lambda;
  pt.eps_used = nr.eps;
  pt.newton_iters = nr.iters;
  pt.residual_rel = nr.rel;
  pt.u = wrap_profile(u, spec.n);
  pt.mu1 = stability_eigenvalue(pt);
  fill_norms(pt);
  pt.pohozaev_residual = pohozaev_check(pt).residual;
  return pt;
}

Branch continue_branch(const ProblemSpec& spec, const StepPolicy& pol) {
  Branch br;
  br.lambda_fail = std::numeric_limits<double>::infinity();
  double lambda = pol.lambda0;
  if (spec.lambda_max > 0.0) lambda = std::min(lambda, spec.lambda_max);
  RadialField init;  // empty: torsion start
  BranchPoint cur;
  // the opening solve may itself sit above the fold; halve down if so
  bool have_first = false;
  for (int tries = 0; tries < 60 && !have_first; ++tries) {
    try {
      cur = solve_at(spec, lambda, init);
      have_first = true;
    } catch (const NoConvergence&) {
      br.lambda_fail = lambda;
      lambda *= 0.5;
    }
  }
  if (!have_first) throw NoConvergence("continue_branch: no starting point converged");

  auto acceptable = [&](const BranchPoint& pt, const BranchPoint* prev) {
    double floor_u = -1e-12 * std::max(1.0, pt.sup_u);
    for (double v : pt.u.values)
      if (v < floor_u) return false;
    for (std::size_t i = 1; i < pt.u.values.size(); ++i)  // radial profile decays
      if (pt.u.values[i] > pt.u.values[i - 1] + 1e-9 * std::max(1.0, pt.sup_u)) return false;
    if (prev) {  // minimal branch grows pointwise
      for (std::size_t i = 0; i < pt.u.values.size(); ++i)
        if (pt.u.values[i] < prev->u.values[i] - 1e-9 * std::max(1.0, prev->u.values[i]))
          return false;
    }
    return pt.mu1 > -1e-8 * std::max(1.0, std::abs(pt.mu1));
  };
  if (!acceptable(cur, nullptr))
    throw NoConvergence("continue_branch: starting point rejected by branch guards");
  br.points.push_back(cur);
  br.lambda_last = lambda;

  double step = pol.first_step_frac * lambda;
  while (int(br.points.size()) < pol.max_points) {
    if (step < pol.stop_rel * br.lambda_last) break;
    double trial = br.lambda_last + step;
    bool capped = spec.lambda_max > 0.0 && trial >= spec.lambda_max;
    if (capped) trial = spec.lambda_max;
    bool ok = false;
    try {
      BranchPoint nxt = solve_at(spec, trial, br.points.back().u);
      if (acceptable(nxt, &br.points.back())) {
        br.points.push_back(std::move(nxt));
        br.lambda_last = trial;
        ok = true;
      }
    } catch (const NoConvergence&) {
    }
    if (ok) {
      if (capped) {  // no fold below the cap
        br.lambda_fail = std::numeric_limits<double>::infinity();
        break;
      }
      step *= pol.grow;
    } else {
      br.lambda_fail = std::min(br.lambda_fail, trial);
      step *= pol.shrink;
    }
  }
  return br;
}

double stability_eigenvalue(const BranchPoint& pt) {
  int M = int(pt.u.values.size()) - 1;
  Mesh mesh = make_mesh(M, pt.n);
  // pencil (K - G) phi = mu B phi on interior nodes, all tridiagonal
  std::vector<double> k(M);
  for (int i = 0; i < M; ++i) {
    double du = (pt.u.values[i + 1] - pt.u.values[i]) / mesh.h;
    k[i] = (pt.p - 1.0) * std::pow(pt.eps_used * pt.eps_used + du * du, 0.5 * (pt.p - 2.0)) *
           mesh.rmid_pow[i] / mesh.h;
  }
  std::vector<double> d(M), e(M - 1);
  for (int i = 0; i < M; ++i) {
    double dia = k[i] + (i > 0 ? k[i - 1] : 0.0) -
                 pt.lambda * pt.f.fp(pt.u.values[i]) * mesh.vol[i];
    d[i] = dia / mesh.vol[i];  // B^{-1/2} (K - G) B^{-1/2}
    if (i + 1 < M) e[i] = -k[i] / std::sqrt(mesh.vol[i] * mesh.vol[i + 1]);
  }
  // Sturm bisection for the smallest eigenvalue of the symmetric tridiagonal
  double lo = d[0], hi = d[0];
  for (int i = 0; i < M; ++i) {
    double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < M ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  auto count_below = [&](double x) {
    int cnt = 0;
    double q = 1.0;
    for (int i = 0; i < M; ++i) {
      double off = i > 0 ? e[i - 1] * e[i - 1] : 0.0;
      q = d[i] - x - off / (q != 0.0 ? q : 1e-300);
      if (q < 0.0) ++cnt;
    }
    return cnt;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
    double mid = 0.5 * (lo + hi);
    (count_below(mid) >= 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

Report stability_key_inequality(const BranchPoint& pt, const RadialField& eta, double p,
                                double tol) {
  if (eta.values.size() != pt.u.values.size())
    throw std::invalid_argument("stability_key_inequality: eta must live on the solution mesh");
  double escale = 0.0;
  for (double v : eta.values) escale = std::max(escale, std::abs(v));
  if (std::abs(eta.values.back()) > 1e-10 * std::max(1.0, escale))
    throw std::invalid_argument("stability_key_inequality: eta must vanish on the boundary");
  if (pt.mu1 < -1e-6 * std::max(1.0, std::abs(pt.mu1)))
    throw std::invalid_argument("stability_key_inequality: point is not semi-stable");
  int M = int(pt.u.values.size()) - 1;
  Mesh mesh = make_mesh(M, pt.n);
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < M; ++i) {
    double rmid = (i + 0.5) * mesh.h;
    double du = (pt.u.values[i + 1] - pt.u.values[i]) / mesh.h;
    double em = 0.5 * (eta.values[i] + eta.values[i + 1]);
    double de = (eta.values[i + 1] - eta.values[i]) / mesh.h;
    double wp = std::pow(std::abs(du), p);
    lhs += wp * em * em * std::pow(rmid, pt.n - 3.0) * mesh.h;
    rhs += wp * de * de * std::pow(rmid, pt.n - 1.0) * mesh.h;
  }
  lhs *= (pt.n - 1.0) / (p - 1.0);
  Report rep;
  rep.name = "stability-key-inequality";
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.constant = (pt.n - 1.0) / (p - 1.0);
  rep.resolution = mesh.h;
  finalize_report(rep, tol);
  return rep;
}

PohozaevCheck pohozaev_check(const BranchPoint& pt) {
  int M = int(pt.u.values.size()) - 1;
  Mesh mesh = make_mesh(M, pt.n);
  double area = sphere_area(pt.n);
  double pprime = conjugate_exponent(pt.p);
  double intG = 0.0, grads = 0.0;
  for (int i = 0; i < M; ++i) {
    intG += pt.f.G(pt.u.values[i]) * mesh.vol[i];
    double du = (pt.u.values[i + 1] - pt.u.values[i]) / mesh.h;
    grads += std::pow(std::abs(du), pt.p) * mesh.rmid_pow[i] * mesh.h;
  }
  intG *= pt.lambda * area;  // n int G(lambda, u) with G scaled by lambda
  grads *= area;
  double slope1 = boundary_slope_magnitude(pt);
  double boundary = area * std::pow(slope1, pt.p) / pprime;
  PohozaevCheck chk;
  chk.volume_lhs = pt.n * intG - (pt.n - pt.p) / pt.p * grads;
  chk.boundary_rhs = boundary;
  chk.residual = std::abs(chk.volume_lhs - chk.boundary_rhs) /
                 std::max({std::abs(chk.volume_lhs), std::abs(chk.boundary_rhs), 1e-300});
  // int |grad u|^p <= max|x| (1/p') int_{dB} |grad u|^p dsigma, max|x| = 1 here
  chk.lemma_lhs = grads;
  chk.lemma_rhs = area * std::pow(slope1, pt.p) / pprime;
  chk.lemma_pass = chk.lemma_lhs <= chk.lemma_rhs * (1.0 + 1e-9) + 1e-300;
  return chk;
}

namespace {

// strictly decreasing check with a tiny tolerance for flat tails
void require_monotone(const BranchPoint& pt) {
  for (std::size_t i = 1; i < pt.u.values.size(); ++i)
    if (pt.u.values[i] > pt.u.values[i - 1] + 1e-12 * std::max(1.0, pt.sup_u))
      throw std::invalid_argument("profile is not monotone decreasing; level inversion undefined");
}

// r(t) and |u'(r(t))| for a strictly decreasing nodal profile
struct LevelPoint {
  double r, slope;
};
LevelPoint invert_level(const BranchPoint& pt, double t) {
  const auto& v = pt.u.values;
  int M = int(v.size()) - 1;
  double h = 1.0 / M;
  // find the cell where u crosses t (u decreasing in r)
  int lo = 0, hi = M;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (v[mid] > t ? lo : hi) = mid;
  }
  double du = (v[hi] - v[lo]) / h;
  double r = lo * h + (du != 0.0 ? (t - v[lo]) / du : 0.0);
  return {std::clamp(r, 0.0, 1.0), std::abs(du)};
}

}  // namespace

std::vector<std::array<double, 2>> psi_profile(const BranchPoint& pt, int samples) {
  require_monotone(pt);
  double area = sphere_area(pt.n);
  std::vector<std::array<double, 2>> out;
  out.reserve(samples);
  for (int j = 0; j < samples; ++j) {
    double t = pt.sup_u * (j + 0.5) / samples;
    LevelPoint lp = invert_level(pt, t);
    out.push_back({t, area * std::pow(lp.r, pt.n - 1.0) * std::pow(lp.slope, pt.p + 1.0)});
  }
  return out;
}

RadialField eta_s_schedule(const BranchPoint& pt, double s) {
  require_monotone(pt);
  if (!(s > 0.0 && s < pt.sup_u))
    throw std::invalid_argument("eta_s_schedule: s must sit inside (0, max u)");
  double area = sphere_area(pt.n);
  double n = pt.n;
  double C = (n - 1.0) * std::pow(area, 2.0 / (n - 1.0)) / (pt.p - 1.0);
  // exponent integrand sqrt(C) psi(t)^{-1/(n-1)} accumulated over a t-grid
  int K = 2048;
  double dt = (pt.sup_u - s) / K;
  std::vector<double> accum(K + 1, 0.0);
  for (int j = 1; j <= K; ++j) {
    double tmid = s + (j - 0.5) * dt;
    LevelPoint lp = invert_level(pt, tmid);
    double psi = area * std::pow(lp.r, n - 1.0) * std::pow(lp.slope, pt.p + 1.0);
    accum[j] = accum[j - 1] + std::sqrt(C) * std::pow(psi, -1.0 / (n - 1.0)) * dt;
  }
  RadialField eta = pt.u;
  for (auto& val : eta.values) {
    double t = val;
    if (t <= s) {
      val = t / s;
    } else {
      double x = std::clamp((t - s) / dt, 0.0, double(K));
      int j = int(x);
      double frac = x - j;
      double acc = accum[j] + (j < K ? frac * (accum[j + 1] - accum[j]) : 0.0);
      val = std::exp(acc / std::sqrt(2.0));
    }
  }
  return eta;
}

Report critical_case_bound(const BranchPoint& pt, double s, double tol) {
  if (std::abs(pt.n - (pt.p + 2.0)) > 1e-9)
    throw std::invalid_argument("critical_case_bound: needs the critical case n = p + 2");
  require_monotone(pt);
  if (!(s > 0.0 && s < pt.sup_u))
    throw std::invalid_argument("critical_case_bound: s must sit inside (0, max u)");
  double area = sphere_area(pt.n);
  double n = pt.n;
  // measured domination constant (n-1) D / ((p-1) psi^{(n-3)/(n-1)}); exactly
  // (n-1)|dB_1|^{2/(n-1)}/(p-1) on the critical line, measured anyway
  double C = 0.0;
  int K = 512;
  for (int j = 0; j < K; ++j) {
    double t = s + (pt.sup_u - s) * (j + 0.5) / K;
    LevelPoint lp = invert_level(pt, t);
    if (lp.slope <= 0.0) continue;
    double psi = area * std::pow(lp.r, n - 1.0) * std::pow(lp.slope, pt.p + 1.0);
    double D = area * std::pow(lp.r, n - 3.0) * std::pow(lp.slope, pt.p - 1.0);
    if (psi <= 0.0) continue;
    C = std::max(C, (n - 1.0) * D / ((pt.p - 1.0) * std::pow(psi, (n - 3.0) / (n - 1.0))));
  }
  // int_{u <= s} |grad u|^{p+2} over the outer region
  double grad_int = integrate_radial_cells_region(
      pt.u, Region::sublevel(s),
      [&](double, double sl) { return std::pow(std::abs(sl), pt.p + 2.0); });
  Report rep;
  rep.name = "critical-sup-bound";
  rep.lhs = pt.sup_u - s;
  rep.rhs = std::pow(2.0 / (C * s * s) * grad_int, 1.0 / (n - 2.0)) *
            std::pow(std::sqrt(2.0 / C) * (n - 3.0) / 2.0, (n - 3.0) / (n - 2.0));
  rep.constant = C;
  rep.resolution = 1.0 / (double(pt.u.values.size()) - 1.0);
  finalize_report(rep, tol);
  return rep;
}

}  // namespace pstable
