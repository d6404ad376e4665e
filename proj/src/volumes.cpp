#include "densfp/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "densfp/error.hpp"
#include "densfp/simd/kernels.hpp"

namespace densfp {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

double sector(const Vec& u, const Vec& v, double r) {
  return 0.5 * r * r * std::atan2(cross2(u, v), u[0] * v[0] + u[1] * v[1]);
}

/// Signed area of disk(0, r) ∩ triangle(0, a, b).
double disk_triangle(const Vec& a, const Vec& b, double r) {
  const double r2 = r * r;
  const double la = a.head<2>().squaredNorm();
  const double lb = b.head<2>().squaredNorm();
  if (la <= r2 && lb <= r2) return 0.5 * cross2(a, b);
  const Vec d = b - a;
  const double qa = d.head<2>().squaredNorm();
  if (qa == 0.0) return 0.0;
  const double qb = a.head<2>().dot(d.head<2>());
  const double qc = la - r2;
  const double disc = qb * qb - qa * qc;
  if (disc <= 0.0) return sector(a, b, r);
  const double root = std::sqrt(disc);
  const double t1 = (-qb - root) / qa;
  const double t2 = (-qb + root) / qa;
  if (t2 <= 0.0 || t1 >= 1.0) return sector(a, b, r);
  const Vec p1 = a + std::max(t1, 0.0) * d;
  const Vec p2 = a + std::min(t2, 1.0) * d;
  return sector(a, p1, r) + 0.5 * cross2(p1, p2) + sector(p2, b, r);
}

/// Signed distance from x to the cell when outside, else <= 0; a lower bound
/// on the true distance.
double outside_gap(const Polytope& shape, const Vec& x) {
  double gap = -std::numeric_limits<double>::infinity();
  for (const auto& f : shape.facets()) gap = std::max(gap, f.plane.eval(x));
  return gap;
}

double ball_volume(int d, double t) {
  switch (d) {
    case 1:
      return 2.0 * t;
    case 2:
      return std::numbers::pi * t * t;
    default:
      return 4.0 / 3.0 * std::numbers::pi * t * t * t;
  }
}

double exact_volume(const Polytope& shape, const Vec& center, double t) {
  if (shape.dim() == 1) {
    const double lo = shape.facets()[0].loop[0][0];
    const double hi = shape.facets()[1].loop[0][0];
    return std::max(0.0, std::min(hi, center[0] + t) - std::max(lo, center[0] - t));
  }
  const auto verts = shape.vertices();
  return std::max(0.0, disk_polygon_area(verts, center, t));
}

/// Sorted distances from center of uniform samples inside the cell.
std::vector<double> sample_distances(const Polytope& shape, const Vec& center, const McConfig& cfg,
                                     std::int64_t& drawn) {
  const int d = shape.dim();
  Vec lo, hi;
  shape.bounds(lo, hi);
  const int strata = std::max(1, cfg.strata);
  std::int64_t boxes = 1;
  for (int i = 0; i < d; ++i) boxes *= strata;
  const std::int64_t per_box = std::max<std::int64_t>(1, (cfg.samples + boxes - 1) / boxes);
  drawn = per_box * boxes;

  std::mt19937_64 rng(cfg.seed);
  simd::PointBuffer pts;
  pts.reserve(static_cast<std::size_t>(drawn));
  const Vec step = (hi - lo) / strata;
  int idx[3] = {0, 0, 0};
  for (std::int64_t b = 0; b < boxes; ++b) {
    std::int64_t rest = b;
    for (int i = 0; i < d; ++i) {
      idx[i] = static_cast<int>(rest % strata);
      rest /= strata;
    }
    for (std::int64_t s = 0; s < per_box; ++s) {
      double c[3] = {0.0, 0.0, 0.0};
      for (int i = 0; i < d; ++i) c[i] = lo[i] + step[i] * (idx[i] + unit_double(rng));
      pts.push_back(c[0], c[1], c[2]);
    }
  }

  simd::PlaneBuffer planes;
  for (const auto& f : shape.facets()) planes.push_back(f.plane.normal[0], f.plane.normal[1], f.plane.normal[2], f.plane.offset);
  const auto& k = simd::active();
  std::vector<std::uint8_t> mask(pts.size());
  k.inside_all(pts.view(), planes.view(), 0.0, mask.data());
  std::vector<double> d2(pts.size());
  const double q[3] = {center[0], center[1], center[2]};
  k.squared_distances(pts.view(), q, d2.data());
  std::vector<double> kept;
  kept.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (mask[i]) kept.push_back(d2[i]);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

void check_bounded(const ConvexCell& cell) {
  if (cell.shape.empty()) return;
  Vec lo, hi;
  cell.shape.bounds(lo, hi);
  if (!lo.allFinite() || !hi.allFinite()) throw NonFiniteCell("cell is unbounded");
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return splitmix(splitmix(splitmix(splitmix(master) ^ a) ^ b) ^ c);
}

double disk_polygon_area(std::span<const Vec> polygon, const Vec& center, double r) {
  if (r <= 0.0 || polygon.size() < 3) return 0.0;
  double area = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec a = polygon[i] - center;
    const Vec b = polygon[(i + 1) % polygon.size()] - center;
    area += disk_triangle(a, b, r);
  }
  return area;
}

std::vector<VolumeEstimate> ball_cell_volume_curve(const ConvexCell& cell, const Vec& center,
                                                   std::span<const double> radii, const McConfig& cfg) {
  check_bounded(cell);
  for (double t : radii) {
    if (!(t >= 0.0)) throw InvalidArgument("ball radius must be non-negative");
  }
  std::vector<VolumeEstimate> out(radii.size());
  if (cell.shape.empty()) return out;
  const int d = cell.shape.dim();
  const double cell_volume = cell.volume();
  const double far = cell.shape.max_distance(center);
  const double near = outside_gap(cell.shape, center);
  const bool mc = d == 3 || cfg.force_monte_carlo;
  const VolumeMethod method = mc ? VolumeMethod::monte_carlo : (d == 1 ? VolumeMethod::exact1d : VolumeMethod::exact2d);

  std::vector<double> dist2;
  std::int64_t drawn = 0;
  bool sampled = false;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double t = radii[j];
    VolumeEstimate& e = out[j];
    e.method = method;
    e.seed = cfg.seed;
    if (t <= 0.0 || t <= near) continue;  // ball misses the cell
    if (t >= far) {
      e.value = cell_volume;
      continue;
    }
    if (!mc) {
      e.value = std::min({exact_volume(cell.shape, center, t), cell_volume, ball_volume(d, t)});
      continue;
    }
    if (!sampled) {
      dist2 = sample_distances(cell.shape, center, cfg, drawn);
      sampled = true;
    }
    e.samples = drawn;
    if (dist2.empty()) continue;
    const auto hits = std::upper_bound(dist2.begin(), dist2.end(), t * t) - dist2.begin();
    const double n = static_cast<double>(dist2.size());
    const double p = static_cast<double>(hits) / n;
    e.value = cell_volume * p;
    e.std_error = cell_volume * std::sqrt(p * (1.0 - p) / n);
  }
  return out;
}

VolumeEstimate ball_cell_volume(const ConvexCell& cell, const Vec& center, double t, const McConfig& cfg) {
  const double radii[1] = {t};
  return ball_cell_volume_curve(cell, center, radii, cfg).front();
}

}  // namespace densfp
