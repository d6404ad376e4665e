#pragma once

#include <cmath>

#include "densfp/lattice.hpp"

namespace densfp::detail {

/// Calls visit(n, offset) for every integer vector n (first dim entries) with
/// |offset - center| <= radius, where offset = lattice.basis() * n + origin.
template <typename Visit>
void for_each_lattice_point(const Lattice& lattice, const Vec& origin, const Vec& center,
                            double radius, Visit&& visit) {
  const int d = lattice.dim();
  const Vec c = lattice.inverse() * (center - origin);
  int lo[3] = {0, 0, 0};
  int hi[3] = {0, 0, 0};
  for (int i = 0; i < d; ++i) {
    const double span = radius * lattice.inverse().row(i).head(d).norm();
    lo[i] = static_cast<int>(std::ceil(c[i] - span - 1e-9));
    hi[i] = static_cast<int>(std::floor(c[i] + span + 1e-9));
  }
  const double r2 = radius * radius;
  const Mat& b = lattice.basis();
  IVec n = IVec::Zero();
  for (n[0] = lo[0]; n[0] <= hi[0]; ++n[0]) {
    for (n[1] = lo[1]; n[1] <= hi[1]; ++n[1]) {
      for (n[2] = lo[2]; n[2] <= hi[2]; ++n[2]) {
        const Vec p = origin + b * n.cast<double>();
        if ((p - center).squaredNorm() <= r2) visit(n, p);
      }
    }
  }
}

}  // namespace densfp::detail
