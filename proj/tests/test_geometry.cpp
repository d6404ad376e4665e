#include <set>

#include "doctest.h"
#include "densfp/error.hpp"
#include "densfp/polytope.hpp"
#include "support.hpp"

using namespace densfp;
using namespace testing;

namespace {

std::set<std::array<long long, 3>> keyed(const std::vector<Vec>& pts) {
  std::set<std::array<long long, 3>> out;
  for (const Vec& p : pts) out.insert({std::llround(p[0] * 1e8), std::llround(p[1] * 1e8), std::llround(p[2] * 1e8)});
  return out;
}

std::vector<Vec> positions(const std::vector<CloudPoint>& pts) {
  std::vector<Vec> out;
  for (const auto& p : pts) out.push_back(p.position);
  return out;
}

}  // namespace

TEST_CASE("lattice rejects singular bases") {
  Mat b = Mat::Identity();
  b.col(1) = Vec(2, 0, 0);
  CHECK_THROWS_AS(Lattice(2, b), SingularBasis);
  b.col(1) = Vec(1, 1e-13, 0);
  CHECK_THROWS_AS(Lattice(2, b), SingularBasis);
  CHECK_THROWS_AS(Lattice(4, Mat::Identity()), InvalidArgument);
}

TEST_CASE("reduce_basis on small examples") {
  Mat b = Mat::Identity();
  b.col(1) = Vec(10, 1, 0);
  const auto r = reduce_basis_with_transform(Lattice(2, b));
  CHECK(r.lattice.vector(0).norm() == doctest::Approx(1.0));
  CHECK(r.lattice.vector(1).norm() == doctest::Approx(1.0));
  CHECK(std::abs(r.transform.block(0, 0, 2, 2).cast<double>().determinant()) == doctest::Approx(1.0));
  CHECK((b * r.transform.cast<double>() - r.lattice.basis()).norm() < 1e-12);

  const auto id = reduce_basis(Lattice(2, Mat::Identity()));
  CHECK((id.basis() - Mat::Identity()).norm() == 0.0);

  Mat c = Mat::Identity();
  c.col(0) = Vec(2, 0, 0);
  c.col(1) = Vec(1, 1, 0);
  const auto rc = reduce_basis_with_transform(Lattice(2, c));
  CHECK(rc.lattice.volume() == doctest::Approx(2.0));
  for (int i = 0; i < 2; ++i) CHECK(rc.lattice.vector(i).norm() <= std::max(c.col(0).norm(), c.col(1).norm()) + 1e-12);
}

TEST_CASE("reduce_basis preserves the lattice (property)") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 3;
    const Mat b = random_basis(d, rng);
    // Skew the basis by a random unimodular matrix: product of elementary shears.
    Mat skewed = b;
    for (int s = 0; s < 4 && d > 1; ++s) {
      const int i = s % d, j = (s + 1) % d;
      skewed.col(i) += coef(rng) * skewed.col(j);
    }
    const Lattice original(d, skewed);
    const auto r = reduce_basis_with_transform(original);
    CHECK(r.lattice.volume() == doctest::Approx(original.volume()).epsilon(1e-10));
    CHECK((skewed * r.transform.cast<double>() - r.lattice.basis()).norm() < 1e-9);
    for (int i = 0; i + 1 < d; ++i) CHECK(r.lattice.vector(i).norm() <= r.lattice.vector(i + 1).norm() + 1e-12);

    const PeriodicSet a = make_set(d, skewed, {Vec::Zero()});
    const PeriodicSet c = make_set(d, r.lattice.basis(), {Vec::Zero()});
    const Vec center(0.3, -0.2, 0.1);
    CHECK(keyed(positions(enumerate_points(a, center, 2.5))) == keyed(positions(enumerate_points(c, center, 2.5))));
  }
}

TEST_CASE("canonicalize reduces coordinates and rejects duplicates") {
  const PeriodicSet s = make_set(2, Mat::Identity(), {Vec(1.25, -0.5, 0)});
  CHECK(s.motif()[0][0] == doctest::Approx(0.25));
  CHECK(s.motif()[0][1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(make_set(2, Mat::Identity(), {Vec::Zero(), Vec::Zero()}), DuplicateMotifPoint);
  CHECK_THROWS_AS(make_set(2, Mat::Identity(), {Vec::Zero(), Vec(1e-12, 0, 0)}), DuplicateMotifPoint);
  CHECK_THROWS_AS(make_set(2, Mat::Identity(), {Vec::Zero(), Vec(0.9999999999999, 0, 0)}), DuplicateMotifPoint);
  CHECK_THROWS_AS(make_set(2, Mat::Identity(), {}), InvalidArgument);
  const PeriodicSet t = make_set(2, Mat::Identity(), {Vec(-1e-18, 0, 0)});
  CHECK(t.motif()[0][0] >= 0.0);
  CHECK(t.motif()[0][0] < 1.0);
}

TEST_CASE("enumerate_points examples") {
  CHECK(enumerate_points(square(), Vec::Zero(), 1.0).size() == 5);
  CHECK(enumerate_points(square(), Vec::Zero(), 1.5).size() == 9);
  CHECK(enumerate_points(hexagonal(), Vec::Zero(), 1.01).size() == 7);
  CHECK(enumerate_points(square(), Vec(0.5, 0.5, 0), 0.1).empty());
  const auto pts = enumerate_points(square(), Vec::Zero(), 1.5);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].position.norm() <= pts[i].position.norm());
}

TEST_CASE("enumerate_points agrees with a brute-force scan and is monotone in the radius") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0), rad(0.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 3;
    const PeriodicSet s = random_set(d, 1 + trial % 3, rng);
    const Vec c(u(rng), d > 1 ? u(rng) : 0, d > 2 ? u(rng) : 0);
    double r1 = rad(rng), r2 = rad(rng);
    if (r1 > r2) std::swap(r1, r2);
    const auto small = keyed(positions(enumerate_points(s, c, r1)));
    const auto large = keyed(positions(enumerate_points(s, c, r2)));
    CHECK(large == keyed(brute_points(s, c, r2)));
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    for (const auto& p : enumerate_points(s, c, r2))
      CHECK((p.position - s.lattice().to_cartesian(s.motif()[p.motif_index] + p.cell.cast<double>())).norm() < 1e-12);
  }
}

TEST_CASE("radii examples") {
  CHECK(packing_radius(integers(1)) == doctest::Approx(0.5));
  CHECK(packing_radius(integers(3)) == doctest::Approx(0.5));
  CHECK(packing_radius(make_set(2, Mat::Identity(), {Vec::Zero(), Vec(0.5, 0, 0)})) == doctest::Approx(0.25));
  CHECK(packing_radius(hexagonal()) == doctest::Approx(0.5));
  const double tol = 1e-7;
  CHECK(std::abs(covering_radius(integers(3), tol) - std::sqrt(3.0) / 2) <= tol);
  CHECK(std::abs(covering_radius(square(), tol) - std::sqrt(0.5)) <= tol);
  CHECK(std::abs(covering_radius(hexagonal(), tol) - 1 / std::sqrt(3.0)) <= tol);
  CHECK(std::abs(covering_radius(integers(1), tol) - 0.5) <= tol);
}

TEST_CASE("nearest_neighbors examples") {
  const auto a = nearest_neighbors(square(), Vec(0.5, 0, 0), 2);
  REQUIRE(a.size() == 2);
  CHECK(a[0].distance == doctest::Approx(0.5));
  CHECK(a[1].distance == doctest::Approx(0.5));
  CHECK(a[0].point.cell == IVec(0, 0, 0));
  CHECK(a[1].point.cell == IVec(1, 0, 0));
  const auto b = nearest_neighbors(square(), Vec(0.1, 0.1, 0), 1);
  CHECK(b[0].distance == doctest::Approx(std::sqrt(0.02)));
  const auto c = nearest_neighbors(square(), Vec(0.5, 0.5, 0), 4);
  for (const auto& n : c) CHECK(n.distance == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("radii bound nearest distances and are isometry invariant (property)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 3;
    const PeriodicSet s = random_set(d, 1 + trial % 4, rng);
    const double tol = 1e-6;
    const double r = packing_radius(s), R = covering_radius(s, tol);
    CHECK(r > 0.0);
    CHECK(r <= R + tol);
    for (int i = 0; i < 20; ++i) {
      const Vec x(u(rng), d > 1 ? u(rng) : 0, d > 2 ? u(rng) : 0);
      const auto nn = nearest_neighbors(s, x, 2);
      CHECK(nn[0].distance <= R + tol);
      CHECK(nn[0].distance == doctest::Approx(brute_distances(s, x, 1)[0]).epsilon(1e-12));
      CHECK((nn[0].point.position - nn[1].point.position).norm() >= 2 * r - 1e-12);
    }
    const PeriodicSet moved = transform(s, random_isometry(d, rng), Vec(u(rng), d > 1 ? u(rng) : 0, d > 2 ? u(rng) : 0));
    CHECK(packing_radius(moved) == doctest::Approx(r).epsilon(1e-9));
    CHECK(std::abs(covering_radius(moved, tol) - R) <= 2 * tol);
  }
}

TEST_CASE("covering radius matches a dense brute-force scan in 2D") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const PeriodicSet s = random_set(2, 1 + trial % 3, rng);
    double best = 0.0;
    const int m = 160;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Vec x = s.lattice().to_cartesian(Vec((i + 0.5) / m, (j + 0.5) / m, 0));
        best = std::max(best, brute_distances(s, x, 1)[0]);
      }
    const double R = covering_radius(s, 1e-7);
    CHECK(R >= best - 1e-7);
    CHECK(R <= best + 0.02);
  }
}

TEST_CASE("polytope box volume, split and containment") {
  const Polytope cube = Polytope::box(3, Vec(-1, -1, -1), Vec(1, 1, 1));
  CHECK(cube.volume() == doctest::Approx(8.0));
  CHECK(cube.vertices().size() == 8);
  CHECK(cube.halfspaces().size() == 6);
  const Halfspace h{Vec(1, 1, 1).normalized(), 0.3};
  const auto [lo, hi] = cube.split(h, 1e-12);
  CHECK(lo.volume() + hi.volume() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(lo.contains(Vec(-0.5, -0.5, -0.5), 1e-12));
  CHECK_FALSE(lo.contains(Vec(0.9, 0.9, 0.9), 1e-12));
  const auto [all, none] = cube.split(Halfspace{Vec(1, 0, 0), 5.0}, 1e-12);
  CHECK(all.volume() == doctest::Approx(8.0));
  CHECK(none.empty());

  const Polytope sq = Polytope::box(2, Vec(-0.5, -0.5, 0), Vec(0.5, 0.5, 0));
  const auto [left, right] = sq.split(Halfspace{Vec(1, 0, 0), 0.1}, 1e-12);
  CHECK(left.volume() == doctest::Approx(0.6));
  CHECK(right.volume() == doctest::Approx(0.4));
  CHECK(left.vertices().size() == 4);
}

TEST_CASE("polytope splits are additive (property)") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> off(-0.6, 0.6);
  for (int d = 1; d <= 3; ++d) {
    for (int trial = 0; trial < 40; ++trial) {
      Polytope p = Polytope::box(d, Vec(-1, -1, -1), Vec(1, 1, 1));
      for (int cut = 0; cut < 5; ++cut) {
        Vec n(g(rng), d > 1 ? g(rng) : 0, d > 2 ? g(rng) : 0);
        n.normalize();
        const auto [a, b] = p.split(Halfspace{n, off(rng)}, 1e-12);
        const double va = a.empty() ? 0.0 : a.volume(), vb = b.empty() ? 0.0 : b.volume();
        CHECK(va + vb == doctest::Approx(p.volume()).epsilon(1e-10));
        if (!a.empty() && va > 1e-3) p = a;
      }
    }
  }
}
