#pragma once

// Brute-force references shared by the unit and acceptance tests. Nothing in
// here calls into the neighbor search or zone code it is used to check.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "densfp/io.hpp"
#include "densfp/periodic_set.hpp"

namespace testing {

using densfp::Mat;
using densfp::PeriodicSet;
using densfp::Vec;

inline PeriodicSet make_set(int dim, const Mat& basis, std::vector<Vec> motif) {
  return densfp::canonicalize(densfp::Lattice(dim, basis), std::move(motif));
}

inline PeriodicSet square() { return densfp::parse_pps("dim 2\nbasis\n1 0\n0 1\nmotif\n0 0\n"); }

inline PeriodicSet hexagonal(double a = 1.0) {
  Mat b = Mat::Identity();
  b.col(0) = Vec(a, 0, 0);
  b.col(1) = Vec(a / 2, a * std::sqrt(3.0) / 2, 0);
  return make_set(2, b, {Vec::Zero()});
}

inline PeriodicSet integers(int dim) { return make_set(dim, Mat::Identity(), {Vec::Zero()}); }

/// All points of the set within `radius` of `center`, by scanning a generous
/// coefficient box of the original (unreduced) basis.
inline std::vector<Vec> brute_points(const PeriodicSet& set, const Vec& center, double radius) {
  const int d = set.dim();
  const Mat& inv = set.lattice().inverse();
  const Vec fc = set.lattice().to_fractional(center);
  int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
  for (int i = 0; i < d; ++i) {
    const double span = radius * inv.row(i).head(d).norm() + 2.0;
    lo[i] = static_cast<int>(std::floor(fc[i] - span));
    hi[i] = static_cast<int>(std::ceil(fc[i] + span));
  }
  std::vector<Vec> out;
  for (const Vec& m : set.motif()) {
    for (int a = lo[0]; a <= hi[0]; ++a)
      for (int b = lo[1]; b <= hi[1]; ++b)
        for (int c = lo[2]; c <= hi[2]; ++c) {
          const Vec p = set.lattice().to_cartesian(m + Vec(a, b, c));
          if ((p - center).norm() <= radius) out.push_back(p);
        }
  }
  return out;
}

/// Sorted distances from x to the closest `count` points of the set.
inline std::vector<double> brute_distances(const PeriodicSet& set, const Vec& x, int count) {
  double radius = set.lattice().basis().colwise().norm().maxCoeff();
  for (;;) {
    std::vector<double> ds;
    for (const Vec& p : brute_points(set, x, radius)) ds.push_back((p - x).norm());
    if (static_cast<int>(ds.size()) > count) {
      std::sort(ds.begin(), ds.end());
      ds.resize(count);
      if (ds.back() < radius) return ds;
    }
    radius *= 2.0;
  }
}

/// Exact ψ_k(t), k = 0..kmax, of a 1D set by sweeping interval endpoints.
inline std::vector<double> psi_1d(const PeriodicSet& set, int kmax, double t) {
  const double period = set.lattice().basis()(0, 0);
  std::vector<std::pair<double, int>> events;
  for (const Vec& p : brute_points(set, Vec(period / 2, 0, 0), period / 2 + t + period)) {
    events.emplace_back(p[0] - t, +1);
    events.emplace_back(p[0] + t, -1);
  }
  std::sort(events.begin(), events.end());
  std::vector<double> psi(kmax + 1, 0.0);
  int depth = 0;
  double prev = 0.0;
  for (const auto& [x, delta] : events) {
    const double a = std::clamp(prev, 0.0, period), b = std::clamp(x, 0.0, period);
    for (int k = 1; k <= std::min(depth, kmax); ++k) psi[k] += b - a;
    depth += delta;
    prev = x;
  }
  psi[0] = period;
  for (double& v : psi) v /= period;
  return psi;
}

/// ψ_k(t), k = 0..kmax, from a cell-centred sample grid of side m per axis,
/// counting with brute_points.
inline std::vector<double> psi_grid(const PeriodicSet& set, int kmax, double t, int m) {
  const int d = set.dim();
  std::vector<double> hits(kmax + 1, 0.0);
  long total = 1;
  for (int i = 0; i < d; ++i) total *= m;
  const Vec mid = set.lattice().to_cartesian(Vec(0.5, d > 1 ? 0.5 : 0, d > 2 ? 0.5 : 0));
  double diam = 0.0;
  for (int i = 0; i < d; ++i) diam += set.lattice().basis().col(i).norm();
  const auto cloud = brute_points(set, mid, t + diam);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    Vec f = Vec::Zero();
    for (int i = 0; i < d; ++i) {
      f[i] = (static_cast<double>(rest % m) + 0.5) / m;
      rest /= m;
    }
    const Vec x = set.lattice().to_cartesian(f);
    int count = 0;
    for (const Vec& p : cloud) count += (p - x).norm() <= t;
    for (int k = 0; k <= std::min(count, kmax); ++k) hits[k] += 1.0;
  }
  for (int k = 0; k <= kmax; ++k) hits[k] /= static_cast<double>(total);
  hits[0] = 1.0;
  return hits;
}

/// Random unit-volume-ish basis with bounded distortion.
inline Mat random_basis(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.8, 1.3), shear(-0.45, 0.45), angle(0.0, 2 * std::numbers::pi);
  Mat b = Mat::Identity();
  if (dim == 1) {
    b(0, 0) = len(rng);
  } else if (dim == 2) {
    const double a = len(rng), c = len(rng), theta = std::numbers::pi / 2 + shear(rng), phi = angle(rng);
    b.col(0) = a * Vec(std::cos(phi), std::sin(phi), 0);
    b.col(1) = c * Vec(std::cos(phi + theta), std::sin(phi + theta), 0);
  } else {
    for (int i = 0; i < 3; ++i) b(i, i) = len(rng);
    b(0, 1) = shear(rng);
    b(0, 2) = shear(rng);
    b(1, 2) = shear(rng);
  }
  return b;
}

/// Random set with motif points at least `min_gap` (Cartesian) apart on the torus.
inline PeriodicSet random_set(int dim, int motif_size, std::mt19937_64& rng, double min_gap = 0.15) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const Mat b = random_basis(dim, rng);
    const densfp::Lattice lattice(dim, b);
    std::vector<Vec> motif;
    int attempts = 0;
    while (static_cast<int>(motif.size()) < motif_size && attempts++ < 1000) {
      Vec f = Vec::Zero();
      for (int i = 0; i < dim; ++i) f[i] = u(rng);
      bool ok = true;
      for (const Vec& g : motif) {
        Vec diff = f - g;
        for (int i = 0; i < dim; ++i) diff[i] -= std::round(diff[i]);
        if (densfp::lattice_coset_distance(lattice, lattice.to_cartesian(diff)) < min_gap) ok = false;
      }
      if (ok) motif.push_back(f);
    }
    if (static_cast<int>(motif.size()) == motif_size) return densfp::canonicalize(lattice, std::move(motif));
  }
}

/// Random orthogonal matrix in the leading d x d block, reflections included.
inline Mat random_isometry(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a = Mat::Identity();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  for (int i = dim; i < 3; ++i) {
    q.row(i).setZero();
    q.col(i).setZero();
    q(i, i) = 1.0;
  }
  if (std::uniform_int_distribution<int>(0, 1)(rng)) q.col(0) = -q.col(0);
  return q;
}

inline PeriodicSet from_text(const std::string& text) { return densfp::parse_pps(text); }

/// 1D set with period p and integer positions.
inline PeriodicSet integer_set_1d(double period, const std::vector<int>& xs) {
  std::vector<Vec> motif;
  for (int x : xs) motif.emplace_back(x / period, 0, 0);
  Mat b = Mat::Identity();
  b(0, 0) = period;
  return make_set(1, b, std::move(motif));
}

}  // namespace testing
