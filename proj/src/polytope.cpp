#include "densfp/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "densfp/error.hpp"

namespace densfp {
namespace {

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

/// Point where segment ab meets the hyperplane. Computed from the
/// lexicographically ordered endpoints so that an edge shared by two faces
/// yields bitwise the same point from either face.
Vec crossing(const Vec& a, double sa, const Vec& b, double sb) {
  if (lex_less(b, a)) return crossing(b, sb, a, sa);
  return a + (b - a) * (sa / (sa - sb));
}

void push_unique(std::vector<Vec>& pts, const Vec& p, double eps) {
  for (const Vec& q : pts) {
    if ((q - p).squaredNorm() <= eps * eps) return;
  }
  pts.push_back(p);
}

// ---------------------------------------------------------------- 2D helpers

struct Poly2 {
  std::vector<Vec> v;
  std::vector<Halfspace> edge;  // edge[i] supports v[i] -> v[i+1]
};

Poly2 to_poly2(const std::vector<Polytope::Facet>& facets) {
  Poly2 p;
  for (const auto& f : facets) {
    p.v.push_back(f.loop[0]);
    p.edge.push_back(f.plane);
  }
  return p;
}

/// Part of the polygon with h <= 0 (Sutherland-Hodgman keeping edge planes).
Poly2 clip_poly2(const Poly2& p, const std::vector<double>& s, const Halfspace& h, double eps) {
  Poly2 out;
  const std::size_t n = p.v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double sc = s[i];
    const double sn = s[j];
    if (sc <= eps) {
      out.v.push_back(p.v[i]);
      out.edge.push_back(sc >= -eps && sn > eps ? h : p.edge[i]);
      if (sc < -eps && sn > eps) {
        out.v.push_back(crossing(p.v[i], sc, p.v[j], sn));
        out.edge.push_back(h);
      }
    } else if (sn < -eps) {
      out.v.push_back(crossing(p.v[i], sc, p.v[j], sn));
      out.edge.push_back(p.edge[i]);
    }
  }
  return out;
}

double area2(const std::vector<Vec>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec& p = v[i];
    const Vec& q = v[(i + 1) % v.size()];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * a;
}

std::vector<Polytope::Facet> from_poly2(Poly2 p, double eps) {
  // Merge consecutive coincident vertices, keeping the later edge plane.
  Poly2 q;
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    if (!q.v.empty() && (q.v.back() - p.v[i]).squaredNorm() <= eps * eps) {
      q.edge.back() = p.edge[i];
      continue;
    }
    q.v.push_back(p.v[i]);
    q.edge.push_back(p.edge[i]);
  }
  while (q.v.size() > 1 && (q.v.back() - q.v.front()).squaredNorm() <= eps * eps) {
    q.v.pop_back();
    q.edge.pop_back();
  }
  std::vector<Polytope::Facet> facets;
  if (q.v.size() < 3 || area2(q.v) <= eps * eps) return facets;
  for (std::size_t i = 0; i < q.v.size(); ++i) {
    facets.push_back({q.edge[i], {q.v[i], q.v[(i + 1) % q.v.size()]}});
  }
  return facets;
}

// ---------------------------------------------------------------- 3D helpers

/// Vertices of one face loop on the h <= 0 side.
std::vector<Vec> clip_loop(const std::vector<Vec>& loop, const std::vector<double>& s, double eps) {
  std::vector<Vec> out;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (s[i] <= eps) out.push_back(loop[i]);
    if ((s[i] < -eps && s[j] > eps) || (s[i] > eps && s[j] < -eps)) {
      out.push_back(crossing(loop[i], s[i], loop[j], s[j]));
    }
  }
  return out;
}

std::vector<Vec> dedupe_loop(const std::vector<Vec>& loop, double eps) {
  std::vector<Vec> out;
  for (const Vec& p : loop) {
    if (!out.empty() && (out.back() - p).squaredNorm() <= eps * eps) continue;
    out.push_back(p);
  }
  while (out.size() > 1 && (out.back() - out.front()).squaredNorm() <= eps * eps) out.pop_back();
  return out;
}

double loop_area(const std::vector<Vec>& loop) {
  Vec acc = Vec::Zero();
  for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
    acc += (loop[i] - loop[0]).cross(loop[i + 1] - loop[0]);
  }
  return 0.5 * acc.norm();
}

/// Orders coplanar points counter-clockwise around `normal`.
std::vector<Vec> order_around(std::vector<Vec> pts, const Vec& normal) {
  Vec centroid = Vec::Zero();
  for (const Vec& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  const Vec u = normal.unitOrthogonal();
  const Vec w = normal.cross(u);
  std::vector<std::pair<double, Vec>> keyed;
  keyed.reserve(pts.size());
  for (const Vec& p : pts) {
    const Vec d = p - centroid;
    keyed.push_back({std::atan2(d.dot(w), d.dot(u)), p});
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(k.second);
  return out;
}

}  // namespace

Polytope Polytope::box(int dim, const Vec& lo, const Vec& hi) {
  Polytope p;
  p.dim_ = dim;
  const auto axis = [](int i, double sign) {
    Vec n = Vec::Zero();
    n[i] = sign;
    return n;
  };
  if (dim == 1) {
    p.facets_.push_back({{axis(0, -1.0), -lo[0]}, {Vec(lo[0], 0, 0)}});
    p.facets_.push_back({{axis(0, 1.0), hi[0]}, {Vec(hi[0], 0, 0)}});
  } else if (dim == 2) {
    const Vec c[4] = {Vec(lo[0], lo[1], 0), Vec(hi[0], lo[1], 0), Vec(hi[0], hi[1], 0), Vec(lo[0], hi[1], 0)};
    const Halfspace e[4] = {{axis(1, -1.0), -lo[1]}, {axis(0, 1.0), hi[0]}, {axis(1, 1.0), hi[1]},
                            {axis(0, -1.0), -lo[0]}};
    for (int i = 0; i < 4; ++i) p.facets_.push_back({e[i], {c[i], c[(i + 1) % 4]}});
  } else {
    const auto corner = [&](int x, int y, int z) {
      return Vec(x ? hi[0] : lo[0], y ? hi[1] : lo[1], z ? hi[2] : lo[2]);
    };
    p.facets_.push_back({{axis(0, -1.0), -lo[0]}, {corner(0, 0, 0), corner(0, 0, 1), corner(0, 1, 1), corner(0, 1, 0)}});
    p.facets_.push_back({{axis(0, 1.0), hi[0]}, {corner(1, 0, 0), corner(1, 1, 0), corner(1, 1, 1), corner(1, 0, 1)}});
    p.facets_.push_back({{axis(1, -1.0), -lo[1]}, {corner(0, 0, 0), corner(1, 0, 0), corner(1, 0, 1), corner(0, 0, 1)}});
    p.facets_.push_back({{axis(1, 1.0), hi[1]}, {corner(0, 1, 0), corner(0, 1, 1), corner(1, 1, 1), corner(1, 1, 0)}});
    p.facets_.push_back({{axis(2, -1.0), -lo[2]}, {corner(0, 0, 0), corner(0, 1, 0), corner(1, 1, 0), corner(1, 0, 0)}});
    p.facets_.push_back({{axis(2, 1.0), hi[2]}, {corner(0, 0, 1), corner(1, 0, 1), corner(1, 1, 1), corner(0, 1, 1)}});
  }
  return p;
}

double Polytope::volume() const {
  if (empty()) return 0.0;
  if (dim_ == 1) return facets_[1].loop[0][0] - facets_[0].loop[0][0];
  if (dim_ == 2) return area2(vertices());
  Vec o = Vec::Zero();
  std::size_t count = 0;
  for (const auto& f : facets_) {
    for (const Vec& v : f.loop) {
      o += v;
      ++count;
    }
  }
  o /= static_cast<double>(count);
  double vol = 0.0;
  for (const auto& f : facets_) {
    const Vec a = f.loop[0] - o;
    for (std::size_t i = 1; i + 1 < f.loop.size(); ++i) {
      vol += a.dot((f.loop[i] - o).cross(f.loop[i + 1] - o));
    }
  }
  return vol / 6.0;
}

std::vector<Vec> Polytope::vertices() const {
  std::vector<Vec> out;
  if (dim_ == 1 || dim_ == 2) {
    for (const auto& f : facets_) out.push_back(f.loop[0]);
    return out;
  }
  for (const auto& f : facets_) {
    for (const Vec& v : f.loop) push_unique(out, v, 0.0);
  }
  return out;
}

std::vector<Halfspace> Polytope::halfspaces() const {
  std::vector<Halfspace> out;
  out.reserve(facets_.size());
  for (const auto& f : facets_) out.push_back(f.plane);
  return out;
}

bool Polytope::contains(const Vec& x, double eps) const {
  if (empty()) return false;
  return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return f.plane.eval(x) <= eps; });
}

void Polytope::bounds(Vec& lo, Vec& hi) const {
  lo = Vec::Constant(std::numeric_limits<double>::infinity());
  hi = -lo;
  for (const auto& f : facets_) {
    for (const Vec& v : f.loop) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  }
  for (int i = dim_; i < 3; ++i) lo[i] = hi[i] = 0.0;
}

double Polytope::max_distance(const Vec& x) const {
  double best = 0.0;
  for (const auto& f : facets_) {
    for (const Vec& v : f.loop) best = std::max(best, (v - x).squaredNorm());
  }
  return std::sqrt(best);
}

std::pair<Polytope, Polytope> Polytope::split(const Halfspace& h, double eps) const {
  std::pair<Polytope, Polytope> out;
  out.first.dim_ = out.second.dim_ = dim_;
  if (empty()) return out;

  // Whole-cell classification first; most splits in an arrangement are trivial.
  bool any_below = false;
  bool any_above = false;
  for (const auto& f : facets_) {
    for (const Vec& v : f.loop) {
      const double s = h.eval(v);
      any_below |= s < -eps;
      any_above |= s > eps;
    }
  }
  if (!any_above) {
    out.first = *this;
    return out;
  }
  if (!any_below) {
    out.second = *this;
    return out;
  }

  if (dim_ == 1) {
    const double lo = facets_[0].loop[0][0];
    const double hi = facets_[1].loop[0][0];
    const double cut = h.offset / h.normal[0];
    const Halfspace up{Vec(1, 0, 0), cut};
    const Halfspace down{Vec(-1, 0, 0), -cut};
    const Polytope left = [&] {
      Polytope p;
      p.dim_ = 1;
      p.facets_ = {facets_[0], {up, {Vec(cut, 0, 0)}}};
      return p;
    }();
    const Polytope right = [&] {
      Polytope p;
      p.dim_ = 1;
      p.facets_ = {{down, {Vec(cut, 0, 0)}}, facets_[1]};
      return p;
    }();
    (void)lo;
    (void)hi;
    if (h.normal[0] > 0) {
      out.first = left;
      out.second = right;
    } else {
      out.first = right;
      out.second = left;
    }
    return out;
  }

  if (dim_ == 2) {
    const Poly2 poly = to_poly2(facets_);
    std::vector<double> s(poly.v.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = h.eval(poly.v[i]);
    std::vector<double> neg(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) neg[i] = -s[i];
    out.first.facets_ = from_poly2(clip_poly2(poly, s, h, eps), eps);
    out.second.facets_ = from_poly2(clip_poly2(poly, neg, h.flipped(), eps), eps);
    return out;
  }

  std::vector<Vec> section;
  for (const auto& f : facets_) {
    std::vector<double> s(f.loop.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = h.eval(f.loop[i]);
    std::vector<double> neg(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      neg[i] = -s[i];
      if (std::abs(s[i]) <= eps) push_unique(section, f.loop[i], eps);
      const std::size_t j = (i + 1) % s.size();
      if ((s[i] < -eps && s[j] > eps) || (s[i] > eps && s[j] < -eps)) {
        push_unique(section, crossing(f.loop[i], s[i], f.loop[j], s[j]), eps);
      }
    }
    auto below = dedupe_loop(clip_loop(f.loop, s, eps), eps);
    auto above = dedupe_loop(clip_loop(f.loop, neg, eps), eps);
    if (below.size() >= 3 && loop_area(below) > eps * eps) out.first.facets_.push_back({f.plane, std::move(below)});
    if (above.size() >= 3 && loop_area(above) > eps * eps) out.second.facets_.push_back({f.plane, std::move(above)});
  }
  if (section.size() < 3) throw DegenerateArrangement("hyperplane section of a cell has fewer than 3 vertices");
  out.first.facets_.push_back({h, order_around(section, h.normal)});
  out.second.facets_.push_back({h.flipped(), order_around(section, -h.normal)});
  if (out.first.facets_.size() < 4) out.first.facets_.clear();
  if (out.second.facets_.size() < 4) out.second.facets_.clear();
  return out;
}

}  // namespace densfp
