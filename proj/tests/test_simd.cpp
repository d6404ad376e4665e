#include <cstring>
#include <random>

#include "doctest.h"
#include "densfp/simd/kernels.hpp"

using namespace densfp::simd;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

PointBuffer random_points(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5, 5);
  PointBuffer p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(u(rng), u(rng), u(rng));
  return p;
}

}  // namespace

TEST_CASE("scalar kernels on a hand example") {
  PointBuffer p;
  p.push_back(0, 0, 0);
  p.push_back(1, 0, 0);
  p.push_back(0, 2, 0);
  const double q[3] = {0, 0, 0};
  const auto& k = scalar_kernels();
  double out[3];
  k.squared_distances(p.view(), q, out);
  CHECK(out[1] == 1.0);
  CHECK(out[2] == 4.0);
  CHECK(k.count_within(p.view(), q, 1.0) == 2);
  CHECK(k.min_squared_distance(p.view(), q) == 0.0);
  PointBuffer none;
  CHECK(std::isinf(k.min_squared_distance(none.view(), q)));
  PlaneBuffer planes;
  planes.push_back(1, 0, 0, 0.5);
  std::uint8_t mask[3];
  CHECK(k.inside_all(p.view(), planes.view(), 0.0, mask) == 2);
  CHECK(mask[1] == 0);
}

TEST_CASE("AVX2 kernels are bitwise identical to the scalar reference") {
#if defined(DENSFP_HAVE_AVX2)
  if (!isa_supported(Isa::avx2)) return;
  const auto& s = scalar_kernels();
  const auto& v = avx2_kernels();
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(-5, 5);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 31u, 64u, 1001u}) {
    const PointBuffer pts = random_points(n, rng);
    const double q[3] = {u(rng), u(rng), u(rng)};
    std::vector<double> a(n), b(n);
    s.squared_distances(pts.view(), q, a.data());
    v.squared_distances(pts.view(), q, b.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(a[i], b[i]));
    for (double r2 : {0.0, 1.0, 9.5, 40.0}) CHECK(s.count_within(pts.view(), q, r2) == v.count_within(pts.view(), q, r2));
    CHECK(same_bits(s.min_squared_distance(pts.view(), q), v.min_squared_distance(pts.view(), q)));

    PlaneBuffer planes;
    for (int j = 0; j < 1 + static_cast<int>(n % 7); ++j) {
      const double nx = u(rng), ny = u(rng), nz = u(rng), len = std::sqrt(nx * nx + ny * ny + nz * nz);
      planes.push_back(nx / len, ny / len, nz / len, u(rng));
    }
    std::vector<std::uint8_t> ma(n + 1), mb(n + 1);
    CHECK(s.inside_all(pts.view(), planes.view(), 1e-9, ma.data()) == v.inside_all(pts.view(), planes.view(), 1e-9, mb.data()));
    for (std::size_t i = 0; i < n; ++i) CHECK(ma[i] == mb[i]);
  }
#endif
}

TEST_CASE("runtime dispatch can be forced and reset") {
  CHECK(force_isa(Isa::scalar));
  CHECK(active().isa == Isa::scalar);
  reset_isa();
  if (isa_supported(Isa::avx2)) CHECK(active().isa == Isa::avx2);
  CHECK(isa_name(Isa::scalar) == "scalar");
}
