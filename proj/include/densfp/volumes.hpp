#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "densfp/periodic_set.hpp"
#include "densfp/zones.hpp"

namespace densfp {

enum class VolumeMethod { exact1d, exact2d, monte_carlo };

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero on the exact paths
  VolumeMethod method = VolumeMethod::exact1d;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

struct McConfig {
  std::int64_t samples = 200000;  // drawn in the cell's bounding box
  int strata = 8;                 // per axis
  std::uint64_t seed = 0x5eed;
  /// Use the Monte Carlo estimator even in 1D/2D (cross-checks).
  bool force_monte_carlo = false;
};

/// Splittable stream seed: mixes a master seed with task coordinates.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// Vol(cell ∩ B(center; t)).
///
/// Exact in 1D and 2D. In 3D, stratified uniform samples from the cell's
/// bounding box are kept when inside the cell, and the exact cell volume is
/// scaled by the fraction of kept samples within t of the center. Results are
/// deterministic for a fixed cfg.seed.
VolumeEstimate ball_cell_volume(const ConvexCell& cell, const Vec& center, double t, const McConfig& cfg = {});

/// Same for an increasing list of radii, sharing one sample set across all of
/// them so the estimates are nondecreasing in t.
std::vector<VolumeEstimate> ball_cell_volume_curve(const ConvexCell& cell, const Vec& center,
                                                   std::span<const double> radii, const McConfig& cfg = {});

/// Exact area of disk(center, r) ∩ convex polygon (counter-clockwise vertices).
double disk_polygon_area(std::span<const Vec> polygon, const Vec& center, double r);

enum class OracleMode { grid, monte_carlo };

/// Brute force ψ_k(t), k = 1..kmax: the fraction of sample points of the
/// unit cell lying within t of at least k points of A.
std::vector<double> oracle_psi(const PeriodicSet& set, int kmax, double t, OracleMode mode, std::int64_t n,
                               std::uint64_t seed = 0);

/// ψ_k(t) for k = 0..kmax over a radius grid; result[k][j] = ψ_k(radii[j]).
std::vector<std::vector<double>> oracle_psi_curves(const PeriodicSet& set, int kmax, std::span<const double> radii,
                                                   OracleMode mode, std::int64_t n, std::uint64_t seed = 0);

}  // namespace densfp
