#include "densfp/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "densfp/error.hpp"
#include "detail.hpp"

namespace densfp {

Lattice::Lattice(int dim, const Mat& basis) : dim_(dim), basis_(Mat::Identity()) {
  if (dim < 1 || dim > 3) throw InvalidArgument("lattice dimension must be 1, 2 or 3");
  basis_.topLeftCorner(dim, dim) = basis.topLeftCorner(dim, dim);
  if (!basis_.allFinite()) throw SingularBasis("basis has non-finite entries");
  double norms = 1.0;
  for (int i = 0; i < dim; ++i) norms *= basis_.col(i).norm();
  const double det = basis_.determinant();
  if (!(std::abs(det) > 1e-12 * norms)) throw SingularBasis("basis vectors are linearly dependent");
  volume_ = std::abs(det);
  inverse_ = basis_.inverse();
}

double Lattice::min_vector_norm() const {
  double m = basis_.col(0).norm();
  for (int i = 1; i < dim_; ++i) m = std::min(m, basis_.col(i).norm());
  return m;
}

double Lattice::height(int i) const { return 1.0 / inverse_.row(i).head(dim_).norm(); }

ReducedBasis reduce_basis_with_transform(const Lattice& lattice) {
  const int d = lattice.dim();
  Mat b = lattice.basis();
  IMat t = IMat::Identity();
  // Size reduction until no pair improves; terminates because the product of
  // norms strictly decreases by a bounded factor on every accepted step.
  for (int sweep = 0; sweep < 1000; ++sweep) {
    bool changed = false;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        const double nj = b.col(j).squaredNorm();
        const double mu = std::round(b.col(i).dot(b.col(j)) / nj);
        if (mu == 0.0) continue;
        const Vec candidate = b.col(i) - mu * b.col(j);
        if (candidate.squaredNorm() < b.col(i).squaredNorm() * (1.0 - 1e-12)) {
          b.col(i) = candidate;
          t.col(i) -= static_cast<int>(mu) * t.col(j);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.begin() + d, [&](int a, int c) {
    return b.col(a).squaredNorm() < b.col(c).squaredNorm();
  });
  Mat sorted = Mat::Identity();
  IMat tsorted = IMat::Identity();
  for (int i = 0; i < d; ++i) {
    sorted.col(i) = b.col(order[i]);
    tsorted.col(i) = t.col(order[i]);
  }
  return {Lattice(d, sorted), tsorted};
}

Lattice reduce_basis(const Lattice& lattice) { return reduce_basis_with_transform(lattice).lattice; }

double lattice_coset_distance(const Lattice& lattice, const Vec& v) {
  Vec frac = lattice.to_fractional(v);
  for (int i = 0; i < lattice.dim(); ++i) frac[i] = std::round(frac[i]);
  const Vec rounded = v - lattice.basis() * frac;
  double best2 = rounded.squaredNorm();
  detail::for_each_lattice_point(lattice, Vec::Zero(), v, std::sqrt(best2),
                                 [&](const IVec&, const Vec& w) {
                                   best2 = std::min(best2, (v - w).squaredNorm());
                                 });
  return std::sqrt(best2);
}

}  // namespace densfp
