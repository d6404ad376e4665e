#include "densfp/periodic_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "densfp/error.hpp"
#include "detail.hpp"

namespace densfp {
namespace {

bool cell_less(const IVec& a, const IVec& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

double unit_ball_volume(int d) {
  switch (d) {
    case 1:
      return 2.0;
    case 2:
      return std::numbers::pi;
    default:
      return 4.0 / 3.0 * std::numbers::pi;
  }
}

/// Visits every point of A in B(center; radius) as (motif index, cell, position).
template <typename Visit>
void for_each_point(const PeriodicSet& set, const Vec& center, double radius, Visit&& visit) {
  const ReducedBasis& rb = set.reduced_transform();
  for (std::size_t m = 0; m < set.size(); ++m) {
    const Vec origin = set.position(m);
    detail::for_each_lattice_point(set.reduced(), origin, center, radius,
                                   [&](const IVec& n, const Vec&) {
                                     const IVec cell = rb.transform * n;
                                     const Vec pos = set.lattice().to_cartesian(set.motif()[m] + cell.cast<double>());
                                     visit(static_cast<int>(m), cell, pos);
                                   });
  }
}

}  // namespace

PeriodicSet canonicalize(const Lattice& lattice, std::vector<Vec> motif, std::vector<std::string> labels) {
  if (motif.empty()) throw InvalidArgument("motif must contain at least one point");
  if (!labels.empty() && labels.size() != motif.size())
    throw InvalidArgument("labels must be empty or match the motif size");
  const int d = lattice.dim();
  for (Vec& f : motif) {
    if (!f.allFinite()) throw InvalidArgument("motif coordinates must be finite");
    for (int i = 0; i < 3; ++i) {
      if (i >= d) {
        f[i] = 0.0;
        continue;
      }
      f[i] -= std::floor(f[i]);
      if (f[i] >= 1.0) f[i] = 0.0;  // -tiny reduces to exactly 1.0
    }
  }
  ReducedBasis reduced = reduce_basis_with_transform(lattice);
  const double tau = 1e-9 * lattice.min_vector_norm();
  for (std::size_t i = 0; i < motif.size(); ++i) {
    for (std::size_t j = i + 1; j < motif.size(); ++j) {
      const Vec delta = lattice.to_cartesian(motif[i] - motif[j]);
      if (lattice_coset_distance(reduced.lattice, delta) <= tau) {
        throw DuplicateMotifPoint("motif points " + std::to_string(i) + " and " + std::to_string(j) +
                                  " coincide");
      }
    }
  }
  return PeriodicSet(lattice, std::move(reduced), std::move(motif), std::move(labels));
}

PeriodicSet canonicalize(const PeriodicSet& set) {
  return canonicalize(set.lattice(), set.motif(), set.labels());
}

std::vector<CloudPoint> enumerate_points(const PeriodicSet& set, const Vec& center, double radius) {
  if (!(radius >= 0.0)) throw InvalidArgument("radius must be non-negative");
  std::vector<std::pair<double, CloudPoint>> found;
  for_each_point(set, center, radius, [&](int m, const IVec& cell, const Vec& pos) {
    const double dist = (pos - center).norm();
    if (dist <= radius) found.push_back({dist, CloudPoint{m, cell, pos}});
  });
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second.motif_index != b.second.motif_index) return a.second.motif_index < b.second.motif_index;
    return cell_less(a.second.cell, b.second.cell);
  });
  std::vector<CloudPoint> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<Neighbor> nearest_neighbors(const PeriodicSet& set, const Vec& x, int j) {
  if (j < 1) throw InvalidArgument("nearest_neighbors needs j >= 1");
  const int d = set.dim();
  double radius = std::pow(j / (set.intensity() * unit_ball_volume(d)), 1.0 / d);
  radius = std::max(radius, set.reduced().min_vector_norm());
  std::vector<CloudPoint> pts;
  for (;;) {
    pts = enumerate_points(set, x, radius);
    if (pts.size() >= static_cast<std::size_t>(j)) break;
    radius *= 2.0;
  }
  std::vector<Neighbor> out;
  out.reserve(j);
  for (int i = 0; i < j; ++i) out.push_back({pts[i], (pts[i].position - x).norm()});
  return out;
}

double packing_radius(const PeriodicSet& set) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < set.size(); ++m) {
    const auto nn = nearest_neighbors(set, set.position(m), 2);
    best = std::min(best, nn[1].distance);
  }
  return 0.5 * best;
}

namespace {

struct SearchBox {
  Vec lo;        // fractional corner in the reduced basis
  Vec size;      // fractional edge lengths
  double value;  // distance to A at the box center
  double bound;  // upper bound on the distance anywhere in the box
};

struct BoundLess {
  bool operator()(const SearchBox& a, const SearchBox& b) const { return a.bound < b.bound; }
};

double circumradius(const Lattice& basis, const Vec& size) {
  const int d = basis.dim();
  double best = 0.0;
  for (int signs = 0; signs < (1 << d); ++signs) {
    Vec diag = Vec::Zero();
    for (int i = 0; i < d; ++i) diag[i] = (signs >> i & 1) ? size[i] : -size[i];
    best = std::max(best, (basis.basis() * diag).norm());
  }
  return 0.5 * best;
}

double distance_to_set(const PeriodicSet& set, const Vec& x, double radius) {
  double best2 = std::numeric_limits<double>::infinity();
  for_each_point(set, x, radius, [&](int, const IVec&, const Vec& p) {
    best2 = std::min(best2, (p - x).squaredNorm());
  });
  return std::sqrt(best2);
}

}  // namespace

double covering_radius(const PeriodicSet& set, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("covering tolerance must be positive");
  const Lattice& red = set.reduced();
  const int d = set.dim();
  const auto make = [&](const Vec& lo, const Vec& size, double radius_hint) {
    const Vec center = red.to_cartesian(lo + 0.5 * size);
    const double value = distance_to_set(set, center, radius_hint);
    return SearchBox{lo, size, value, value + circumradius(red, size)};
  };
  Vec unit = Vec::Zero();
  unit.head(d).setOnes();
  // Any point of the cell is within its diameter of a translate of motif point 0.
  const double diameter = 2.0 * circumradius(red, unit);
  std::priority_queue<SearchBox, std::vector<SearchBox>, BoundLess> queue;
  SearchBox root = make(Vec::Zero(), unit, diameter);
  double lower = root.value;
  queue.push(root);
  while (!queue.empty()) {
    SearchBox box = queue.top();
    queue.pop();
    if (box.bound <= lower + tol) break;
    int axis = 0;
    double longest = -1.0;
    for (int i = 0; i < d; ++i) {
      const double len = red.vector(i).norm() * box.size[i];
      if (len > longest) {
        longest = len;
        axis = i;
      }
    }
    Vec half = box.size;
    half[axis] *= 0.5;
    for (int side = 0; side < 2; ++side) {
      Vec lo = box.lo;
      lo[axis] += side * half[axis];
      SearchBox child = make(lo, half, box.bound + 1e-12);
      lower = std::max(lower, child.value);
      if (child.bound > lower + tol) queue.push(child);
    }
  }
  return lower;
}

RadiiReport radii(const PeriodicSet& set, double tol) {
  return {packing_radius(set), covering_radius(set, tol), tol};
}

double default_covering_tolerance(const PeriodicSet& set) { return 1e-7 * set.lattice().min_vector_norm(); }

simd::PointBuffer point_cloud(const PeriodicSet& set, const Vec& lo, const Vec& hi, double radius) {
  const Vec center = 0.5 * (lo + hi);
  const double reach = radius + 0.5 * (hi - lo).norm();
  simd::PointBuffer out;
  for_each_point(set, center, reach, [&](int, const IVec&, const Vec& p) {
    Vec gap = Vec::Zero();
    for (int i = 0; i < 3; ++i) gap[i] = std::max({lo[i] - p[i], 0.0, p[i] - hi[i]});
    if (gap.norm() <= radius) out.push_back(p[0], p[1], p[2]);
  });
  return out;
}

PeriodicSet transform(const PeriodicSet& set, const Mat& rotation, const Vec& shift) {
  const int d = set.dim();
  Mat basis = Mat::Identity();
  basis.topLeftCorner(d, d) = (rotation * set.lattice().basis()).topLeftCorner(d, d);
  Lattice lattice(d, basis);
  std::vector<Vec> motif;
  motif.reserve(set.size());
  for (std::size_t m = 0; m < set.size(); ++m) {
    Vec x = rotation * set.position(m) + shift;
    x.tail(3 - d).setZero();
    motif.push_back(lattice.to_fractional(x));
  }
  return canonicalize(lattice, std::move(motif), set.labels());
}

}  // namespace densfp
