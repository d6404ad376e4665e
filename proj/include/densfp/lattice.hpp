#pragma once

#include <Eigen/Dense>

namespace densfp {

/// Cartesian or fractional point. Components beyond the lattice dimension are zero.
using Vec = Eigen::Vector3d;
using Mat = Eigen::Matrix3d;
using IVec = Eigen::Vector3i;
using IMat = Eigen::Matrix3i;

/// A full lattice in R^d, d in {1,2,3}, given by the columns of its basis.
///
/// The basis is stored padded to 3x3 with the identity in the unused block,
/// so inverses and determinants of the padded matrix are those of the
/// d x d block.
class Lattice {
 public:
  /// Throws SingularBasis if |det| <= 1e-12 * product of column norms.
  Lattice(int dim, const Mat& basis);

  int dim() const noexcept { return dim_; }
  const Mat& basis() const noexcept { return basis_; }
  const Mat& inverse() const noexcept { return inverse_; }
  Vec vector(int i) const { return basis_.col(i); }

  /// Vol(U) = |det basis|.
  double volume() const noexcept { return volume_; }
  double min_vector_norm() const;

  Vec to_cartesian(const Vec& frac) const { return basis_ * frac; }
  Vec to_fractional(const Vec& x) const { return inverse_ * x; }

  /// Distance between the two lattice hyperplanes orthogonal to row i of the
  /// inverse basis, i.e. the width of the unit cell along axis i.
  double height(int i) const;

 private:
  int dim_;
  Mat basis_;
  Mat inverse_;
  double volume_;
};

struct ReducedBasis {
  Lattice lattice;
  /// Unimodular integer matrix with reduced.basis() == original.basis() * transform.
  IMat transform;
};

/// Pairwise (Lagrange in 2D, greedy in 3D) reduction; preserves the lattice.
Lattice reduce_basis(const Lattice& lattice);
ReducedBasis reduce_basis_with_transform(const Lattice& lattice);

/// min over lattice vectors w of |v - w|. Exact; fastest with a reduced basis.
double lattice_coset_distance(const Lattice& lattice, const Vec& v);

}  // namespace densfp
