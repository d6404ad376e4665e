#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "densfp/periodic_set.hpp"
#include "densfp/volumes.hpp"

namespace densfp {

enum class FingerprintMethod { zones, oracle };

struct FingerprintConfig {
  int kmax = 8;
  int t_steps = 64;
  double t_max = 0.0;  // <= 0: R((kmax+1)^(1/d) + 1)
  FingerprintMethod method = FingerprintMethod::zones;
  /// 3D zones path: samples drawn per Brillouin zone of each motif point,
  /// shared among its cells in proportion to their volume.
  std::int64_t mc_samples = 200000;
  std::uint64_t seed = 0x5eed;
  /// Oracle path: number of sample points in the unit cell.
  std::int64_t oracle_samples = 1 << 20;
  /// Retry a degenerate arrangement once with the motif jittered by 1e-7 r.
  bool jitter_on_degeneracy = false;
  /// Worker threads for per-motif-point work; 0 picks the hardware count.
  int threads = 0;
};

struct TableMeta {
  int dim = 0;
  std::uint64_t set_hash = 0;
  std::uint64_t seed = 0;
  std::string method;
  double covering_radius = 0.0;
  bool jittered = false;
};

/// Density functions on a shared radius grid: psi[k][j] = ψ_k(tgrid[j]) for
/// k = 0..kmax+1 (the extra row makes rho[kmax] exact) and
/// rho[k][j] = psi[k][j] - psi[k+1][j] for k = 0..kmax.
struct DensityTable {
  int kmax = 0;
  std::vector<double> tgrid;
  std::vector<std::vector<double>> psi;
  std::vector<std::vector<double>> psi_error;  // standard error per entry, zero on exact paths
  std::vector<std::vector<double>> rho;
  TableMeta meta;
};

/// Uniform grid on [0, T], T = R((kmax+1)^(1/d) + 1), endpoints included.
std::vector<double> default_tgrid(const PeriodicSet& set, int kmax, int steps);
std::vector<double> default_tgrid(int dim, double covering, int kmax, int steps);
std::vector<double> uniform_grid(double tmax, int steps);

/// ψ tables from Brillouin zones (or the brute-force oracle when
/// cfg.method == oracle), with rho filled in.
DensityTable psi_table(const PeriodicSet& set, const FingerprintConfig& cfg);

/// Fills rho from psi. Negative differences are clamped to zero when within
/// 1e-6 plus five combined standard errors; larger ones throw ConsistencyError.
DensityTable rho_from_psi(DensityTable table);

/// max_k (k+1)^(-(d-1)/d) max_j |rho_a[k][j] - rho_b[k][j]|.
double fingerprint_distance(const DensityTable& a, const DensityTable& b);

/// Undamped per-k L∞ distances max_j |rho_a[k][j] - rho_b[k][j]|, k = 0..kmax.
std::vector<double> rho_distances(const DensityTable& a, const DensityTable& b);

/// Stable FNV-1a hash of the canonical set (lattice and motif bits).
std::uint64_t set_hash(const PeriodicSet& set);

}  // namespace densfp
