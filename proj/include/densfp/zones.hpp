#pragma once

#include <cstdint>
#include <vector>

#include "densfp/periodic_set.hpp"
#include "densfp/polytope.hpp"

namespace densfp {

/// One cell of the bisector arrangement around a motif point. Its depth is
/// the number of bisectors separating it from the motif point, so the cell
/// belongs to the (depth + 1)-th Brillouin zone.
struct ConvexCell {
  Polytope shape;
  int depth = 0;
  std::uint64_t id = 0;  // stable within its ZoneComplex

  std::vector<Halfspace> halfspaces() const { return shape.halfspaces(); }
  std::vector<Vec> vertices() const { return shape.vertices(); }
  double volume() const { return shape.volume(); }
};

/// Brillouin zones Z_1..Z_kmax of one motif point, as depth-tagged cells.
struct ZoneComplex {
  int motif_index = 0;
  int dim = 0;
  Vec center = Vec::Zero();
  int kmax = 0;
  std::vector<ConvexCell> cells;  // sorted by depth, then id
  double cutoff = 0.0;            // neighbor search radius s
  double clip_halfwidth = 0.0;    // cells live inside the axis box center +- clip_halfwidth
  double eps = 0.0;               // geometric tolerance used for the splits
  int bisectors_used = 0;         // bisectors inserted before the certificate stopped the build
  double reach = 0.0;             // max distance from center of any vertex in zones 1..kmax

  /// Cells of zone k (depth k - 1).
  std::vector<const ConvexCell*> belt(int k) const;
};

struct ZoneOptions {
  /// Covering radius of the set; computed when <= 0.
  double covering_radius = 0.0;
};

/// s = 4 R (kmax + 1)^(1/d).
double cutoff_radius(const PeriodicSet& set, int kmax, double covering);

/// Inserts bisectors of the motif point and its neighbors in order of
/// distance, splitting cells and discarding any whose depth reaches kmax.
/// Stops early once the next bisector misses every remaining cell.
ZoneComplex build_zones(const PeriodicSet& set, int motif_index, int kmax, const ZoneOptions& options = {});

/// Vol(Z_k(a)): sum of the volumes of the depth k - 1 cells.
double zone_volume(const ZoneComplex& zones, int k);

struct MultiplicityEntry {
  int m = 1;                 // number of lattice Voronoi domains containing the point
  bool is_boundary = false;  // m >= 2
  /// Fractional coordinates of the translates of the point lying in the
  /// closed Voronoi domain of the origin; there are exactly m of them.
  std::vector<Vec> copies;
  /// Lexicographically smallest of `copies`: the class representative.
  Vec representative = Vec::Zero();
};

struct MultiplicityTable {
  std::vector<MultiplicityEntry> entries;
  double tolerance = 0.0;
};

/// Membership in a lattice Voronoi domain is decided within `tol`;
/// tol <= 0 selects 1e-7 times the covering radius.
MultiplicityTable multiplicity(const PeriodicSet& set, double tol = 0.0);

}  // namespace densfp
