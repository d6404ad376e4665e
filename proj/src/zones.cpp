#include "densfp/zones.hpp"

#include <algorithm>
#include <cmath>

#include "densfp/error.hpp"
#include "detail.hpp"

namespace densfp {
namespace {

struct LiveCell {
  Polytope shape;
  int depth = 0;
  Vec centre = Vec::Zero();
  double radius = 0.0;  // bounding sphere about centre
  double reach = 0.0;   // max distance from the motif point

  LiveCell(Polytope p, int d, const Vec& a) : shape(std::move(p)), depth(d) {
    const auto verts = shape.vertices();
    for (const Vec& v : verts) centre += v;
    centre /= static_cast<double>(verts.size());
    radius = shape.max_distance(centre);
    reach = shape.max_distance(a);
  }
};

}  // namespace

std::vector<const ConvexCell*> ZoneComplex::belt(int k) const {
  std::vector<const ConvexCell*> out;
  for (const auto& c : cells) {
    if (c.depth == k - 1) out.push_back(&c);
  }
  return out;
}

double cutoff_radius(const PeriodicSet& set, int kmax, double covering) {
  if (kmax < 1) throw InvalidArgument("kmax must be at least 1");
  if (!(covering > 0.0)) throw InvalidArgument("covering radius must be positive");
  return 4.0 * covering * std::pow(static_cast<double>(kmax + 1), 1.0 / set.dim());
}

ZoneComplex build_zones(const PeriodicSet& set, int motif_index, int kmax, const ZoneOptions& options) {
  if (kmax < 1) throw InvalidArgument("kmax must be at least 1");
  if (motif_index < 0 || static_cast<std::size_t>(motif_index) >= set.size())
    throw InvalidArgument("motif index out of range");
  const double covering = options.covering_radius > 0.0
                              ? options.covering_radius
                              : covering_radius(set, default_covering_tolerance(set));
  const int d = set.dim();
  const Vec a = set.position(motif_index);

  ZoneComplex zc;
  zc.motif_index = motif_index;
  zc.dim = d;
  zc.center = a;
  zc.kmax = kmax;
  zc.cutoff = cutoff_radius(set, kmax, covering);
  zc.clip_halfwidth = zc.cutoff;
  zc.eps = 1e-9 * zc.cutoff;
  const double eps = zc.eps;

  Vec lo = a;
  Vec hi = a;
  for (int i = 0; i < d; ++i) {
    lo[i] -= zc.clip_halfwidth;
    hi[i] += zc.clip_halfwidth;
  }
  std::vector<LiveCell> live;
  live.emplace_back(Polytope::box(d, lo, hi), 0, a);

  const auto neighbors = enumerate_points(set, a, zc.cutoff);
  std::vector<LiveCell> next;
  for (const CloudPoint& b : neighbors) {
    const Vec diff = b.position - a;
    const double gap = diff.norm();
    if (gap <= eps) continue;  // the motif point itself
    double reach = 0.0;
    for (const auto& c : live) reach = std::max(reach, c.reach);
    if (0.5 * gap > reach + eps) break;  // bisector misses every remaining cell

    const Vec n = diff / gap;
    const Halfspace h{n, n.dot(0.5 * (a + b.position))};
    next.clear();
    next.reserve(live.size() + 8);
    for (auto& c : live) {
      const double s = h.eval(c.centre);
      if (s < -(c.radius + eps)) {
        next.push_back(std::move(c));
        continue;
      }
      if (s > c.radius + eps) {
        if (c.depth + 1 < kmax) {
          c.depth += 1;
          next.push_back(std::move(c));
        }
        continue;
      }
      auto [near_side, far_side] = c.shape.split(h, eps);
      if (!near_side.empty()) {
        if (far_side.empty()) {
          next.push_back(std::move(c));
          continue;
        }
        next.emplace_back(std::move(near_side), c.depth, a);
      }
      if (!far_side.empty() && c.depth + 1 < kmax) next.emplace_back(std::move(far_side), c.depth + 1, a);
    }
    live.swap(next);
    ++zc.bisectors_used;
  }

  std::stable_sort(live.begin(), live.end(), [](const LiveCell& x, const LiveCell& y) { return x.depth < y.depth; });
  zc.cells.reserve(live.size());
  for (std::size_t i = 0; i < live.size(); ++i) {
    zc.reach = std::max(zc.reach, live[i].reach);
    zc.cells.push_back({std::move(live[i].shape), live[i].depth, static_cast<std::uint64_t>(i)});
  }
  for (int k = 1; k <= kmax; ++k) {
    if (zc.belt(k).empty()) throw DegenerateArrangement("Brillouin zone " + std::to_string(k) + " came out empty");
  }
  return zc;
}

double zone_volume(const ZoneComplex& zones, int k) {
  if (k < 1 || k > zones.kmax) throw InvalidArgument("zone index out of range");
  double vol = 0.0;
  for (const auto& c : zones.cells) {
    if (c.depth == k - 1) vol += c.volume();
  }
  return vol;
}

MultiplicityTable multiplicity(const PeriodicSet& set, double tol) {
  MultiplicityTable table;
  if (tol <= 0.0) tol = 1e-7 * covering_radius(set, default_covering_tolerance(set));
  table.tolerance = tol;
  const Lattice& red = set.reduced();
  const Lattice& lat = set.lattice();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Vec p = set.position(i);
    const double nearest = lattice_coset_distance(red, p);
    MultiplicityEntry e;
    e.m = 0;
    detail::for_each_lattice_point(red, Vec::Zero(), p, nearest + tol, [&](const IVec&, const Vec& q) {
      ++e.m;
      Vec cell = lat.to_fractional(q);
      for (int j = 0; j < 3; ++j) cell[j] = std::round(cell[j]);
      e.copies.push_back(set.motif()[i] - cell);
    });
    std::sort(e.copies.begin(), e.copies.end(), [](const Vec& x, const Vec& y) {
      for (int j = 0; j < 3; ++j) {
        if (x[j] != y[j]) return x[j] < y[j];
      }
      return false;
    });
    e.is_boundary = e.m >= 2;
    e.representative = e.copies.front();
    table.entries.push_back(std::move(e));
  }
  return table;
}

}  // namespace densfp
