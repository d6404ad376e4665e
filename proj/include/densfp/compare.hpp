#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "densfp/fingerprint.hpp"
#include "densfp/periodic_set.hpp"

namespace densfp {

/// Succeeds when both sets live on the same lattice (their bases differ by a
/// unimodular integer matrix up to `tol` in length units) and have motifs of
/// equal size. Returns the lattice of `a`.
Lattice common_lattice_check(const PeriodicSet& a, const PeriodicSet& q, double tol = 1e-9);

/// Bottleneck distance over bijections between the two sets, reduced to a
/// minimum-bottleneck perfect matching of the motifs under torus distances.
double bottleneck_distance(const PeriodicSet& a, const PeriodicSet& q, double tol = 1e-9);

/// Moves every motif point by an independent uniform vector from the ball of
/// radius delta. Requires delta < packing radius.
PeriodicSet perturb(const PeriodicSet& set, double delta, std::uint64_t seed);

/// 13 R^2 / r^3.
double lipschitz_constant(double packing, double covering);

enum class Metric { fingerprint, bottleneck, both };

struct ComparisonReport {
  std::optional<double> d_b;
  std::optional<double> d_f;
  std::vector<double> rho_distances;  // per k, undamped
  std::optional<double> lipschitz_c;  // only in 3D
  std::optional<bool> bound_satisfied;
  double packing = 0.0;
  double covering = 0.0;
  int dim = 0;
};

/// Both fingerprints share a grid reaching max(R_a, R_q)((kmax+1)^(1/d) + 1)
/// unless cfg.t_max is set.
ComparisonReport compare(const PeriodicSet& a, const PeriodicSet& q, const FingerprintConfig& cfg, Metric metric);

struct StabilityRow {
  int trial = 0;
  double d_b = 0.0;
  double d_f = 0.0;
  double ratio = 0.0;  // d_F / d_B, 0 when d_B = 0
  double bound = 0.0;  // C * d_B, 0 outside 3D
  bool satisfied = true;
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  double max_ratio = 0.0;
  std::optional<double> lipschitz_c;
  std::optional<bool> all_satisfied;  // only asserted in 3D
  std::string note;
};

/// Perturbs the set `trials` times and checks d_F <= 13 R^2 / r^3 * d_B.
/// Outside 3D the constant is not established, so only ratios are reported.
StabilityReport stability_trial(const PeriodicSet& set, double delta, int trials, const FingerprintConfig& cfg,
                                std::uint64_t seed);

}  // namespace densfp
