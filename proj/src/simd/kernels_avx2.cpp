#include <immintrin.h>

#include <limits>

#include "densfp/simd/kernels.hpp"

namespace densfp::simd {
namespace {

inline __m256d sq_dist4(PointsView p, std::size_t i, __m256d qx, __m256d qy, __m256d qz) {
  const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(p.x + i), qx);
  const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(p.y + i), qy);
  const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(p.z + i), qz);
  const __m256d xy = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
  return _mm256_add_pd(xy, _mm256_mul_pd(dz, dz));
}

inline double sq_dist1(PointsView p, std::size_t i, const double q[3]) {
  const double dx = p.x[i] - q[0];
  const double dy = p.y[i] - q[1];
  const double dz = p.z[i] - q[2];
  return (dx * dx + dy * dy) + dz * dz;
}

void squared_distances(PointsView pts, const double q[3], double* out) {
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);
  std::size_t i = 0;
  for (; i + 4 <= pts.size; i += 4) _mm256_storeu_pd(out + i, sq_dist4(pts, i, qx, qy, qz));
  for (; i < pts.size; ++i) out[i] = sq_dist1(pts, i, q);
}

std::size_t count_within(PointsView pts, const double q[3], double r2) {
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);
  const __m256d lim = _mm256_set1_pd(r2);
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 4 <= pts.size; i += 4) {
    const __m256d le = _mm256_cmp_pd(sq_dist4(pts, i, qx, qy, qz), lim, _CMP_LE_OQ);
    n += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(le)));
  }
  for (; i < pts.size; ++i) n += sq_dist1(pts, i, q) <= r2 ? 1 : 0;
  return n;
}

double min_squared_distance(PointsView pts, const double q[3]) {
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);
  __m256d best4 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= pts.size; i += 4) best4 = _mm256_min_pd(best4, sq_dist4(pts, i, qx, qy, qz));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best4);
  double best = lanes[0];
  for (int l = 1; l < 4; ++l) best = lanes[l] < best ? lanes[l] : best;
  for (; i < pts.size; ++i) {
    const double d = sq_dist1(pts, i, q);
    if (d < best) best = d;
  }
  return best;
}

std::size_t inside_all(PointsView s, PlanesView planes, double slack, std::uint8_t* mask) {
  const __m256d sl = _mm256_set1_pd(slack);
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 4 <= s.size; i += 4) {
    const __m256d x = _mm256_loadu_pd(s.x + i);
    const __m256d y = _mm256_loadu_pd(s.y + i);
    const __m256d z = _mm256_loadu_pd(s.z + i);
    int alive = 0xF;
    for (std::size_t j = 0; j < planes.size && alive; ++j) {
      const __m256d xy = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(planes.nx[j]), x),
                                       _mm256_mul_pd(_mm256_set1_pd(planes.ny[j]), y));
      const __m256d v = _mm256_add_pd(xy, _mm256_mul_pd(_mm256_set1_pd(planes.nz[j]), z));
      const __m256d ok = _mm256_cmp_pd(_mm256_sub_pd(v, _mm256_set1_pd(planes.c[j])), sl, _CMP_LE_OQ);
      alive &= _mm256_movemask_pd(ok);
    }
    for (int l = 0; l < 4; ++l) {
      const bool in = (alive >> l) & 1;
      mask[i + l] = in ? 1 : 0;
      n += in ? 1 : 0;
    }
  }
  for (; i < s.size; ++i) {
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

const Kernels& avx2_kernels() noexcept {
  static const Kernels k{Isa::avx2, &squared_distances, &count_within, &min_squared_distance,
                         &inside_all};
  return k;
}

}  // namespace densfp::simd
