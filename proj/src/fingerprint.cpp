#include "densfp/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "densfp/error.hpp"
#include "parallel.hpp"

namespace densfp {
namespace {

struct BeltSums {
  // [k][j], k = 1..K
  std::vector<std::vector<double>> covered, uncovered, variance;
};

BeltSums zone_sums(const PeriodicSet& set, std::size_t m, int belts, std::span<const double> tgrid,
                   double covering, const FingerprintConfig& cfg) {
  const ZoneComplex zc = build_zones(set, static_cast<int>(m), belts, {covering});
  BeltSums sums;
  sums.covered.assign(belts + 1, std::vector<double>(tgrid.size(), 0.0));
  sums.uncovered = sums.covered;
  sums.variance = sums.covered;
  std::vector<double> belt_volume(belts + 1, 0.0);
  for (const auto& cell : zc.cells) belt_volume[cell.depth + 1] += cell.volume();

  for (const auto& cell : zc.cells) {
    const int k = cell.depth + 1;
    const double vol = cell.volume();
    McConfig mc;
    mc.seed = stream_seed(cfg.seed, m, cell.id);
    mc.samples = std::max<std::int64_t>(
        512, std::llround(static_cast<double>(cfg.mc_samples) * vol / std::max(belt_volume[k], 1e-300)));
    const auto curve = ball_cell_volume_curve(cell, zc.center, tgrid, mc);
    for (std::size_t j = 0; j < tgrid.size(); ++j) {
      sums.covered[k][j] += curve[j].value;
      sums.uncovered[k][j] += vol - curve[j].value;
      sums.variance[k][j] += curve[j].std_error * curve[j].std_error;
    }
  }
  return sums;
}

PeriodicSet jittered(const PeriodicSet& set, std::uint64_t seed) {
  const double r = packing_radius(set);
  std::mt19937_64 rng(stream_seed(seed, 0x717e));
  std::normal_distribution<double> gauss;
  std::vector<Vec> motif;
  for (std::size_t m = 0; m < set.size(); ++m) {
    Vec step = Vec::Zero();
    for (int i = 0; i < set.dim(); ++i) step[i] = gauss(rng);
    step *= 1e-7 * r / std::max(step.norm(), 1e-300);
    motif.push_back(set.lattice().to_fractional(set.position(m) + step));
  }
  return canonicalize(set.lattice(), std::move(motif), set.labels());
}

DensityTable zones_table(const PeriodicSet& set, const FingerprintConfig& cfg, std::vector<double> tgrid,
                         double covering) {
  const int belts = cfg.kmax + 1;
  std::vector<BeltSums> per_point(set.size());
  detail::parallel_for(set.size(), cfg.threads, [&](std::size_t m) {
    per_point[m] = zone_sums(set, m, belts, tgrid, covering, cfg);
  });

  DensityTable table;
  table.kmax = cfg.kmax;
  table.tgrid = std::move(tgrid);
  const std::size_t nt = table.tgrid.size();
  table.psi.assign(belts + 1, std::vector<double>(nt, 0.0));
  table.psi_error = table.psi;
  const double cell_volume = set.lattice().volume();
  for (std::size_t j = 0; j < nt; ++j) {
    table.psi[0][j] = 1.0;
    for (int k = 1; k <= belts; ++k) {
      // Each motif point is the single canonical member of its translate
      // class, so its weight is m(p) copies times 1/m(p), i.e. 1.
      double covered = 0.0;
      double uncovered = 0.0;
      double variance = 0.0;
      for (const auto& s : per_point) {
        covered += s.covered[k][j];
        uncovered += s.uncovered[k][j];
        variance += s.variance[k][j];
      }
      // Summing the smaller part keeps fully covered and fully empty zones exact.
      const double psi = covered <= uncovered ? covered / cell_volume : 1.0 - uncovered / cell_volume;
      table.psi[k][j] = std::clamp(psi, 0.0, 1.0);
      table.psi_error[k][j] = std::sqrt(variance) / cell_volume;
    }
  }
  return table;
}

}  // namespace

std::vector<double> uniform_grid(double tmax, int steps) {
  if (steps < 2) throw InvalidArgument("radius grid needs at least 2 steps");
  if (!(tmax > 0.0)) throw InvalidArgument("radius grid needs a positive upper end");
  std::vector<double> grid(steps);
  for (int j = 0; j < steps; ++j) grid[j] = tmax * j / (steps - 1);
  grid.back() = tmax;
  return grid;
}

std::vector<double> default_tgrid(int dim, double covering, int kmax, int steps) {
  if (kmax < 1) throw InvalidArgument("kmax must be at least 1");
  const double tmax = covering * (std::pow(static_cast<double>(kmax + 1), 1.0 / dim) + 1.0);
  return uniform_grid(tmax, steps);
}

std::vector<double> default_tgrid(const PeriodicSet& set, int kmax, int steps) {
  return default_tgrid(set.dim(), covering_radius(set, default_covering_tolerance(set)), kmax, steps);
}

DensityTable psi_table(const PeriodicSet& set, const FingerprintConfig& cfg) {
  if (cfg.kmax < 1) throw InvalidArgument("kmax must be at least 1");
  if (cfg.t_steps < 2) throw InvalidArgument("t_steps must be at least 2");
  const double covering = covering_radius(set, default_covering_tolerance(set));
  std::vector<double> tgrid = cfg.t_max > 0.0 ? uniform_grid(cfg.t_max, cfg.t_steps)
                                              : default_tgrid(set.dim(), covering, cfg.kmax, cfg.t_steps);
  DensityTable table;
  bool jitter_used = false;
  if (cfg.method == FingerprintMethod::oracle) {
    table.kmax = cfg.kmax;
    table.psi = oracle_psi_curves(set, cfg.kmax + 1, tgrid, OracleMode::grid, cfg.oracle_samples, cfg.seed);
    table.psi_error.assign(table.psi.size(), std::vector<double>(tgrid.size(), 0.0));
    table.tgrid = std::move(tgrid);
  } else {
    try {
      table = zones_table(set, cfg, tgrid, covering);
    } catch (const DegenerateArrangement&) {
      if (!cfg.jitter_on_degeneracy) throw;
      const PeriodicSet moved = jittered(set, cfg.seed);
      table = zones_table(moved, cfg, tgrid, covering_radius(moved, default_covering_tolerance(moved)));
      jitter_used = true;
    }
  }
  table.meta.dim = set.dim();
  table.meta.set_hash = set_hash(set);
  table.meta.seed = cfg.seed;
  table.meta.method = cfg.method == FingerprintMethod::oracle ? "oracle-grid"
                      : set.dim() == 3                         ? "zones-monte-carlo"
                                                               : "zones-exact";
  table.meta.covering_radius = covering;
  table.meta.jittered = jitter_used;
  return rho_from_psi(std::move(table));
}

DensityTable rho_from_psi(DensityTable table) {
  const int rows = table.kmax + 2;
  if (static_cast<int>(table.psi.size()) != rows) throw InvalidArgument("psi must have kmax + 2 rows");
  if (table.psi_error.empty()) table.psi_error.assign(rows, std::vector<double>(table.tgrid.size(), 0.0));
  table.rho.assign(table.kmax + 1, std::vector<double>(table.tgrid.size(), 0.0));
  for (int k = 0; k <= table.kmax; ++k) {
    for (std::size_t j = 0; j < table.tgrid.size(); ++j) {
      const double diff = table.psi[k][j] - table.psi[k + 1][j];
      const double noise = std::hypot(table.psi_error[k][j], table.psi_error[k + 1][j]);
      if (diff < -(1e-6 + 5.0 * noise)) {
        throw ConsistencyError("psi_" + std::to_string(k + 1) + " exceeds psi_" + std::to_string(k) +
                               " at t = " + std::to_string(table.tgrid[j]));
      }
      table.rho[k][j] = std::max(diff, 0.0);
    }
  }
  return table;
}

std::vector<double> rho_distances(const DensityTable& a, const DensityTable& b) {
  if (a.kmax != b.kmax || a.tgrid != b.tgrid || a.meta.dim != b.meta.dim)
    throw GridMismatch("density tables use different grids, orders or dimensions");
  std::vector<double> out(a.kmax + 1, 0.0);
  for (int k = 0; k <= a.kmax; ++k) {
    for (std::size_t j = 0; j < a.tgrid.size(); ++j) out[k] = std::max(out[k], std::abs(a.rho[k][j] - b.rho[k][j]));
  }
  return out;
}

double fingerprint_distance(const DensityTable& a, const DensityTable& b) {
  const auto per_k = rho_distances(a, b);
  const int d = a.meta.dim > 0 ? a.meta.dim : 3;
  const double exponent = static_cast<double>(d - 1) / d;
  double best = 0.0;
  for (std::size_t k = 0; k < per_k.size(); ++k) {
    best = std::max(best, per_k[k] / std::pow(static_cast<double>(k + 1), exponent));
  }
  return best;
}

std::uint64_t set_hash(const PeriodicSet& set) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(set.dim()));
  for (int i = 0; i < set.dim(); ++i) {
    for (int j = 0; j < set.dim(); ++j) mix(std::bit_cast<std::uint64_t>(set.lattice().basis()(i, j)));
  }
  for (const Vec& f : set.motif()) {
    for (int i = 0; i < set.dim(); ++i) mix(std::bit_cast<std::uint64_t>(f[i]));
  }
  return h;
}

}  // namespace densfp
