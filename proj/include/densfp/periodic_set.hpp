#pragma once

#include <string>
#include <vector>

#include "densfp/lattice.hpp"
#include "densfp/simd/kernels.hpp"

namespace densfp {

/// A = M + Lambda with the motif M stored in fractional coordinates in [0,1).
/// Construct through canonicalize(); instances are immutable.
class PeriodicSet {
 public:
  const Lattice& lattice() const noexcept { return lattice_; }
  /// Reduced basis of the same lattice, used for neighbor searches.
  const Lattice& reduced() const noexcept { return reduced_.lattice; }
  const ReducedBasis& reduced_transform() const noexcept { return reduced_; }
  int dim() const noexcept { return lattice_.dim(); }
  std::size_t size() const noexcept { return motif_.size(); }
  const std::vector<Vec>& motif() const noexcept { return motif_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  Vec position(std::size_t i) const { return lattice_.to_cartesian(motif_[i]); }
  /// Points per unit volume, |M| / Vol(U).
  double intensity() const { return static_cast<double>(motif_.size()) / lattice_.volume(); }

 private:
  friend PeriodicSet canonicalize(const Lattice&, std::vector<Vec>, std::vector<std::string>);
  PeriodicSet(Lattice lattice, ReducedBasis reduced, std::vector<Vec> motif, std::vector<std::string> labels)
      : lattice_(std::move(lattice)),
        reduced_(std::move(reduced)),
        motif_(std::move(motif)),
        labels_(std::move(labels)) {}

  Lattice lattice_;
  ReducedBasis reduced_;
  std::vector<Vec> motif_;
  std::vector<std::string> labels_;
};

/// Reduces fractional coordinates mod 1 and rejects coincident motif points
/// (torus distance below 1e-9 times the shortest basis vector).
PeriodicSet canonicalize(const Lattice& lattice, std::vector<Vec> motif,
                         std::vector<std::string> labels = {});
PeriodicSet canonicalize(const PeriodicSet& set);

/// A concrete point of A: position = basis * (motif[motif_index] + cell).
struct CloudPoint {
  int motif_index = 0;
  IVec cell = IVec::Zero();
  Vec position = Vec::Zero();
};

struct Neighbor {
  CloudPoint point;
  double distance = 0.0;
};

/// All points of A in the closed ball B(center; radius), ordered by distance,
/// then motif index, then cell coefficients.
std::vector<CloudPoint> enumerate_points(const PeriodicSet& set, const Vec& center, double radius);

/// The j closest points of A to x (ties broken as in enumerate_points).
std::vector<Neighbor> nearest_neighbors(const PeriodicSet& set, const Vec& x, int j);

double packing_radius(const PeriodicSet& set);

/// Maximum distance from a point of space to A, within +-tol. Branch and
/// bound over the reduced unit cell using the 1-Lipschitz property of the
/// distance function.
double covering_radius(const PeriodicSet& set, double tol);

struct RadiiReport {
  double packing = 0.0;
  double covering = 0.0;
  double covering_tolerance = 0.0;
};

RadiiReport radii(const PeriodicSet& set, double tol);

/// Default tolerance for covering radii: 1e-7 of the shortest basis vector.
double default_covering_tolerance(const PeriodicSet& set);

/// Positions of all points of A within `radius` of any point of the box
/// [lo, hi], in structure-of-arrays form for the distance kernels.
simd::PointBuffer point_cloud(const PeriodicSet& set, const Vec& lo, const Vec& hi, double radius);

/// Image of the set under x -> rotation * x + shift (rotation orthogonal).
PeriodicSet transform(const PeriodicSet& set, const Mat& rotation, const Vec& shift);

}  // namespace densfp
