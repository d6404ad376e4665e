#include <algorithm>
#include <cmath>
#include <random>

#include "densfp/error.hpp"
#include "densfp/simd/kernels.hpp"
#include "densfp/volumes.hpp"

namespace densfp {
namespace {

/// Sample points of the unit cell, in Cartesian coordinates.
std::vector<Vec> cell_samples(const PeriodicSet& set, OracleMode mode, std::int64_t n, std::uint64_t seed) {
  const int d = set.dim();
  std::vector<Vec> out;
  if (mode == OracleMode::grid) {
    // Cell-centred grid with about n points; axis counts follow the layer heights so spacing is even.
    const double scale = std::pow(static_cast<double>(n) / set.lattice().volume(), 1.0 / d);
    std::int64_t m[3] = {1, 1, 1};
    std::int64_t total = 1;
    for (int i = 0; i < d; ++i) {
      m[i] = std::max<std::int64_t>(1, std::llround(scale * set.lattice().height(i)));
      total *= m[i];
    }
    for (int i = 0; total < n; i = (i + 1) % d) {
      total = total / m[i] * (m[i] + 1);
      ++m[i];
    }
    out.reserve(static_cast<std::size_t>(total));
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rest = idx;
      Vec f = Vec::Zero();
      for (int i = 0; i < d; ++i) {
        f[i] = (static_cast<double>(rest % m[i]) + 0.5) / static_cast<double>(m[i]);
        rest /= m[i];
      }
      out.push_back(set.lattice().to_cartesian(f));
    }
    return out;
  }
  std::mt19937_64 rng(stream_seed(seed, 0x0ac1e));
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t s = 0; s < n; ++s) {
    Vec f = Vec::Zero();
    for (int i = 0; i < d; ++i) f[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out.push_back(set.lattice().to_cartesian(f));
  }
  return out;
}

void cell_box(const PeriodicSet& set, Vec& lo, Vec& hi) {
  const int d = set.dim();
  lo = Vec::Zero();
  hi = Vec::Zero();
  for (int corner = 0; corner < (1 << d); ++corner) {
    Vec f = Vec::Zero();
    for (int i = 0; i < d; ++i) f[i] = (corner >> i) & 1;
    const Vec x = set.lattice().to_cartesian(f);
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
}

}  // namespace

std::vector<std::vector<double>> oracle_psi_curves(const PeriodicSet& set, int kmax, std::span<const double> radii,
                                                   OracleMode mode, std::int64_t n, std::uint64_t seed) {
  if (kmax < 1) throw InvalidArgument("kmax must be at least 1");
  if (n < 1) throw InvalidArgument("oracle needs at least one sample");
  double tmax = 0.0;
  for (double t : radii) {
    if (!(t >= 0.0)) throw InvalidArgument("radius must be non-negative");
    tmax = std::max(tmax, t);
  }
  Vec lo, hi;
  cell_box(set, lo, hi);
  const simd::PointBuffer cloud = point_cloud(set, lo, hi, tmax);
  const auto samples = cell_samples(set, mode, n, seed);
  const auto& kern = simd::active();

  // For each sample, the k-th smallest distance decides ψ_k at every radius.
  std::vector<std::vector<std::int64_t>> hits(kmax + 1, std::vector<std::int64_t>(radii.size(), 0));
  std::vector<double> d2(cloud.size());
  std::vector<double> kth(kmax, std::numeric_limits<double>::infinity());
  for (const Vec& x : samples) {
    const double q[3] = {x[0], x[1], x[2]};
    kern.squared_distances(cloud.view(), q, d2.data());
    const std::size_t take = std::min<std::size_t>(kmax, d2.size());
    std::partial_sort(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(take), d2.end());
    std::fill(kth.begin(), kth.end(), std::numeric_limits<double>::infinity());
    std::copy(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(take), kth.begin());
    for (std::size_t j = 0; j < radii.size(); ++j) {
      const double t2 = radii[j] * radii[j];
      if (t2 == 0.0) continue;
      for (int k = 1; k <= kmax && kth[k - 1] <= t2; ++k) ++hits[k][j];
    }
  }
  std::vector<std::vector<double>> psi(kmax + 1, std::vector<double>(radii.size(), 0.0));
  const double total = static_cast<double>(samples.size());
  for (std::size_t j = 0; j < radii.size(); ++j) {
    psi[0][j] = 1.0;
    for (int k = 1; k <= kmax; ++k) psi[k][j] = static_cast<double>(hits[k][j]) / total;
  }
  return psi;
}

std::vector<double> oracle_psi(const PeriodicSet& set, int kmax, double t, OracleMode mode, std::int64_t n,
                               std::uint64_t seed) {
  if (kmax < 1) throw InvalidArgument("kmax must be at least 1");
  if (n < 1) throw InvalidArgument("oracle needs at least one sample");
  if (!(t >= 0.0)) throw InvalidArgument("radius must be non-negative");
  Vec lo, hi;
  cell_box(set, lo, hi);
  const simd::PointBuffer cloud = point_cloud(set, lo, hi, t);
  const auto samples = cell_samples(set, mode, n, seed);
  const auto& kern = simd::active();
  std::vector<std::int64_t> hits(kmax + 1, 0);
  for (const Vec& x : samples) {
    const double q[3] = {x[0], x[1], x[2]};
    const std::size_t covered = kern.count_within(cloud.view(), q, t * t);
    for (int k = 1; k <= kmax && static_cast<std::size_t>(k) <= covered; ++k) ++hits[k];
  }
  std::vector<double> psi(kmax, 0.0);
  if (t == 0.0) return psi;
  for (int k = 1; k <= kmax; ++k) psi[k - 1] = static_cast<double>(hits[k]) / static_cast<double>(samples.size());
  return psi;
}

}  // namespace densfp
