#include "pstable/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>

namespace pstable {

namespace {

// Draws in [0,1) straight from the engine words. The standard pins the
// mt19937_64 sequence but not the distribution adaptors, and corpus files
// are promised byte-identical for a fixed seed.
double unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

double in_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit(rng);
}

// Smooth bump with a quartically flat peak: cos^4((pi/2) t^2), support
// |t| < 1. The flat top keeps the near-peak superlevel sets several grid
// cells wide, so the level-set quadratures stay resolved at the thresholds
// the inequality checks scan; a quadratic peak shrinks them below h.
double peak_bump(double t) {
  double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  double c = std::cos(1.5707963267948966 * t2);
  double c2 = c * c;
  return c2 * c2;
}

struct Bump {
  std::array<double, 3> c{0, 0, 0};
  double rho = 0.2;
  double amp = 1.0;
};

double superpose(const std::vector<Bump>& bumps, std::array<double, 3> x) {
  double v = 0.0;
  for (const auto& b : bumps) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      double dk = x[k] - b.c[k];
      d2 += dk * dk;
    }
    v += b.amp * peak_bump(std::sqrt(d2) / b.rho);
  }
  return v;
}

int draw_bump_count(std::mt19937_64& rng) { return 1 + int(rng() % 4); }

bool disjoint_from(const std::vector<Bump>& placed, const Bump& b) {
  for (const auto& other : placed) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      double dk = other.c[k] - b.c[k];
      d2 += dk * dk;
    }
    double need = other.rho + b.rho + 0.02;
    if (d2 < need * need) return false;
  }
  return true;
}

// Supports are kept pairwise disjoint: overlapping random bumps produce
// thin lens-shaped top-level sets no fixed grid resolves.
std::vector<Bump> draw_grid_bumps(std::mt19937_64& rng, const std::string& kind) {
  std::vector<Bump> bumps;
  int want = draw_bump_count(rng);
  for (int nb = 0; nb < want; ++nb) {
    for (int tries = 0; tries < 64; ++tries) {
      Bump b;
      b.rho = in_range(rng, 0.45, 0.70);
      b.amp = in_range(rng, 0.25, 1.0);
      if (kind == "box") {
        double reach = 0.95 - b.rho;
        for (int k = 0; k < 3; ++k) b.c[k] = in_range(rng, -reach, reach);
      } else {
        double d2 = 0.0;
        std::array<double, 3> dir{0, 0, 0};
        do {
          d2 = 0.0;
          for (int k = 0; k < 3; ++k) {
            dir[k] = in_range(rng, -1.0, 1.0);
            d2 += dir[k] * dir[k];
          }
        } while (d2 > 1.0 || d2 < 1e-6);
        double scale = in_range(rng, 0.0, 0.93 - b.rho) / std::sqrt(d2);
        for (int k = 0; k < 3; ++k) b.c[k] = dir[k] * scale;
      }
      if (disjoint_from(bumps, b)) {
        bumps.push_back(b);
        break;
      }
    }
  }
  return bumps;
}

CartesianField sample_grid_bumps(const CorpusSpec& spec, const std::vector<Bump>& bumps) {
  auto sampler = [&bumps](std::array<double, 3> x) { return superpose(bumps, x); };
  if (spec.kind == "box")
    return make_box_field(3, {spec.nodes, spec.nodes, spec.nodes}, 2.0, sampler);
  return make_ball_field(3, spec.nodes, 1.0, sampler);
}

void validate(const CorpusSpec& spec) {
  if (spec.count < 0) throw std::invalid_argument("corpus: count must be >= 0");
  if (spec.nodes < 8) throw std::invalid_argument("corpus: resolution too small");
  if (spec.kind != "box" && spec.kind != "ball" && spec.kind != "radial")
    throw std::invalid_argument("corpus: kind must be box, ball, or radial");
  if (spec.kind != "radial" && spec.d != 3)
    throw std::invalid_argument("corpus: grid corpora are 3-D");
}

}  // namespace

std::vector<CartesianField> corpus_cartesian(const CorpusSpec& spec) {
  validate(spec);
  if (spec.kind == "radial") throw std::invalid_argument("corpus: radial kind on grid path");
  std::mt19937_64 rng(spec.seed);
  std::vector<CartesianField> out;
  out.reserve(std::size_t(spec.count));
  for (int idx = 0; idx < spec.count; ++idx)
    out.push_back(sample_grid_bumps(spec, draw_grid_bumps(rng, spec.kind)));
  return out;
}

CartesianField corpus_cartesian_at(const CorpusSpec& spec, int index) {
  validate(spec);
  if (spec.kind == "radial") throw std::invalid_argument("corpus: radial kind on grid path");
  if (index < 0 || index >= spec.count) throw std::invalid_argument("corpus: index out of range");
  std::mt19937_64 rng(spec.seed);
  std::vector<Bump> bumps;
  for (int idx = 0; idx <= index; ++idx) bumps = draw_grid_bumps(rng, spec.kind);
  return sample_grid_bumps(spec, bumps);
}

std::vector<RadialField> corpus_radial(const CorpusSpec& spec) {
  validate(spec);
  if (spec.kind != "radial") throw std::invalid_argument("corpus: grid kind on radial path");
  std::mt19937_64 rng(spec.seed);
  std::vector<RadialField> out;
  out.reserve(std::size_t(spec.count));
  for (int idx = 0; idx < spec.count; ++idx) {
    std::vector<Bump> bumps(std::size_t(draw_bump_count(rng)));
    for (auto& b : bumps) {
      b.rho = in_range(rng, 0.10, 0.28);
      b.amp = in_range(rng, 0.25, 1.0);
      b.c[0] = in_range(rng, 0.0, 0.95 - b.rho);
    }
    RadialField f;
    f.n = spec.n;
    f.values.resize(std::size_t(spec.nodes) + 1);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      double r = double(i) / double(spec.nodes);
      double v = 0.0;
      for (const auto& b : bumps) v += b.amp * peak_bump((r - b.c[0]) / b.rho);
      f.values[i] = v;
    }
    f.values.back() = 0.0;  // supports end at 0.95, this only clips roundoff
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::string> corpus_generate(const CorpusSpec& spec, const std::string& dir) {
  validate(spec);
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  paths.reserve(std::size_t(spec.count));
  char name[64];
  if (spec.kind == "radial") {
    auto fields = corpus_radial(spec);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      std::snprintf(name, sizeof name, "corpus_%03zu.pfield", i);
      paths.push_back((std::filesystem::path(dir) / name).string());
      save_pfield(paths.back(), fields[i]);
    }
  } else {
    auto fields = corpus_cartesian(spec);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      std::snprintf(name, sizeof name, "corpus_%03zu.pfield", i);
      paths.push_back((std::filesystem::path(dir) / name).string());
      save_pfield(paths.back(), fields[i]);
    }
  }
  return paths;
}

}  // namespace pstable
