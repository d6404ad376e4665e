#include <limits>

#include "densfp/simd/kernels.hpp"

namespace densfp::simd {
namespace {

inline double sq_dist(PointsView p, std::size_t i, const double q[3]) {
  const double dx = p.x[i] - q[0];
  const double dy = p.y[i] - q[1];
  const double dz = p.z[i] - q[2];
  return (dx * dx + dy * dy) + dz * dz;
}

void squared_distances(PointsView pts, const double q[3], double* out) {
  for (std::size_t i = 0; i < pts.size; ++i) out[i] = sq_dist(pts, i, q);
}

std::size_t count_within(PointsView pts, const double q[3], double r2) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < pts.size; ++i) n += sq_dist(pts, i, q) <= r2 ? 1 : 0;
  return n;
}

double min_squared_distance(PointsView pts, const double q[3]) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size; ++i) {
    const double d = sq_dist(pts, i, q);
    if (d < best) best = d;
  }
  return best;
}

std::size_t inside_all(PointsView s, PlanesView planes, double slack, std::uint8_t* mask) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size; ++i) {
    bool inside = true;
    for (std::size_t j = 0; j < planes.size && inside; ++j) {
      const double v = (planes.nx[j] * s.x[i] + planes.ny[j] * s.y[i]) + planes.nz[j] * s.z[i];
      inside = v - planes.c[j] <= slack;
    }
    mask[i] = inside ? 1 : 0;
    n += inside ? 1 : 0;
  }
  return n;
}

}  // namespace

const Kernels& scalar_kernels() noexcept {
  static const Kernels k{Isa::scalar, &squared_distances, &count_within, &min_squared_distance,
                         &inside_all};
  return k;
}

}  // namespace densfp::simd
