#pragma once

#include <utility>
#include <vector>

#include "densfp/lattice.hpp"

namespace densfp {

/// Closed halfspace {x : normal . x <= offset} with a unit normal.
struct Halfspace {
  Vec normal = Vec::Zero();
  double offset = 0.0;

  double eval(const Vec& x) const { return normal.dot(x) - offset; }
  Halfspace flipped() const { return {-normal, -offset}; }
};

/// Bounded convex polytope in R^d (d = 1, 2, 3) supporting exact splits by
/// hyperplanes. 1D: an interval. 2D: a counter-clockwise polygon with one
/// supporting halfspace per edge. 3D: planar faces with outward
/// counter-clockwise vertex loops.
class Polytope {
 public:
  struct Facet {
    Halfspace plane;
    std::vector<Vec> loop;  // ordered; a single vertex in 1D, an edge's endpoints in 2D
  };

  Polytope() = default;
  static Polytope box(int dim, const Vec& lo, const Vec& hi);

  int dim() const noexcept { return dim_; }
  bool empty() const noexcept { return facets_.empty(); }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  double volume() const;
  /// Distinct vertices (2D: in counter-clockwise order).
  std::vector<Vec> vertices() const;
  std::vector<Halfspace> halfspaces() const;
  bool contains(const Vec& x, double eps) const;
  void bounds(Vec& lo, Vec& hi) const;
  double max_distance(const Vec& x) const;

  /// Pieces on either side of the hyperplane: {h <= 0 part, h >= 0 part}.
  /// Vertices within eps of the hyperplane count as on it; a side with no
  /// vertex strictly beyond eps comes back empty. Throws DegenerateArrangement
  /// when the cut section cannot be closed consistently.
  std::pair<Polytope, Polytope> split(const Halfspace& h, double eps) const;

 private:
  int dim_ = 0;
  std::vector<Facet> facets_;
};

}  // namespace densfp
