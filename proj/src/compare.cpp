#include "densfp/compare.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "densfp/error.hpp"

namespace densfp {
namespace {

/// Kuhn's augmenting paths on the bipartite graph cost <= limit.
bool has_perfect_matching(const std::vector<std::vector<double>>& cost, double limit) {
  const std::size_t n = cost.size();
  std::vector<int> owner(n, -1);
  std::vector<char> seen(n);
  const auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j = 0; j < n; ++j) {
      if (cost[i][j] > limit || seen[j]) continue;
      seen[j] = 1;
      if (owner[j] < 0 || self(self, static_cast<std::size_t>(owner[j]))) {
        owner[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

}  // namespace

Lattice common_lattice_check(const PeriodicSet& a, const PeriodicSet& q, double tol) {
  if (a.dim() != q.dim()) throw NoCommonLattice("sets have different dimensions");
  const int d = a.dim();
  const Mat& ba = a.lattice().basis();
  const Mat& bq = q.lattice().basis();
  Mat change = a.lattice().inverse() * bq;
  Mat rounded = change;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) rounded(i, j) = std::round(change(i, j));
  }
  const double residual = (ba * rounded - bq).topLeftCorner(d, d).cwiseAbs().maxCoeff();
  if (residual > tol || std::abs(std::abs(rounded.determinant()) - 1.0) > 0.5)
    throw NoCommonLattice("the two sets are not periodic with respect to the same lattice");
  if (a.size() != q.size()) {
    throw MotifCardinalityMismatch("motif sizes differ: " + std::to_string(a.size()) + " vs " +
                                   std::to_string(q.size()));
  }
  return a.lattice();
}

double bottleneck_distance(const PeriodicSet& a, const PeriodicSet& q, double tol) {
  common_lattice_check(a, q, tol);
  const std::size_t n = a.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  std::vector<double> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = lattice_coset_distance(a.reduced(), a.position(i) - q.position(j));
      values.push_back(cost[i][j]);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (has_perfect_matching(cost, values[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return values[lo];
}

PeriodicSet perturb(const PeriodicSet& set, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw InvalidArgument("delta must be non-negative");
  if (delta >= packing_radius(set)) throw DeltaTooLarge("delta must be smaller than the packing radius");
  if (delta == 0.0) return set;
  const int d = set.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uniform;
  std::vector<Vec> motif;
  motif.reserve(set.size());
  for (std::size_t m = 0; m < set.size(); ++m) {
    Vec dir = Vec::Zero();
    for (int i = 0; i < d; ++i) dir[i] = gauss(rng);
    const double len = dir.norm();
    const double radius = delta * std::pow(uniform(rng), 1.0 / d);
    const Vec step = len > 0.0 ? Vec(dir * (radius / len)) : Vec(Vec::Zero());
    motif.push_back(set.lattice().to_fractional(set.position(m) + step));
  }
  return canonicalize(set.lattice(), std::move(motif), set.labels());
}

double lipschitz_constant(double packing, double covering) {
  return 13.0 * covering * covering / (packing * packing * packing);
}

ComparisonReport compare(const PeriodicSet& a, const PeriodicSet& q, const FingerprintConfig& cfg, Metric metric) {
  ComparisonReport report;
  report.dim = a.dim();
  report.packing = std::min(packing_radius(a), packing_radius(q));
  report.covering = std::max(covering_radius(a, default_covering_tolerance(a)),
                             covering_radius(q, default_covering_tolerance(q)));
  if (metric != Metric::fingerprint) report.d_b = bottleneck_distance(a, q);
  if (metric != Metric::bottleneck) {
    if (a.dim() != q.dim()) throw GridMismatch("sets have different dimensions");
    FingerprintConfig shared = cfg;
    if (shared.t_max <= 0.0) {
      shared.t_max = report.covering * (std::pow(static_cast<double>(cfg.kmax + 1), 1.0 / a.dim()) + 1.0);
    }
    const DensityTable fa = psi_table(a, shared);
    const DensityTable fq = psi_table(q, shared);
    report.rho_distances = rho_distances(fa, fq);
    report.d_f = fingerprint_distance(fa, fq);
  }
  if (a.dim() == 3) {
    report.lipschitz_c = lipschitz_constant(report.packing, report.covering);
    if (report.d_b && report.d_f) report.bound_satisfied = *report.d_f <= *report.lipschitz_c * *report.d_b + 1e-9;
  }
  return report;
}

StabilityReport stability_trial(const PeriodicSet& set, double delta, int trials, const FingerprintConfig& cfg,
                                std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("need at least one trial");
  const double r = packing_radius(set);
  const double big_r = covering_radius(set, default_covering_tolerance(set));
  if (!(delta >= 0.0) || delta >= 0.5 * r) throw DeltaTooLarge("delta must be below half the packing radius");
  const int d = set.dim();

  FingerprintConfig shared = cfg;
  if (shared.t_max <= 0.0) {
    // Perturbed copies have covering radius at most R + delta.
    shared.t_max = (big_r + delta) * (std::pow(static_cast<double>(cfg.kmax + 1), 1.0 / d) + 1.0);
  }
  const DensityTable base = psi_table(set, shared);

  StabilityReport report;
  if (d == 3) {
    report.lipschitz_c = lipschitz_constant(r, big_r);
    report.all_satisfied = true;
  } else {
    report.note = "constant not established for d != 3; ratios only";
  }
  for (int i = 0; i < trials; ++i) {
    const PeriodicSet moved = perturb(set, delta, stream_seed(seed, static_cast<std::uint64_t>(i)));
    StabilityRow row;
    row.trial = i;
    row.d_b = bottleneck_distance(set, moved);
    row.d_f = fingerprint_distance(base, psi_table(moved, shared));
    row.ratio = row.d_b > 0.0 ? row.d_f / row.d_b : 0.0;
    if (report.lipschitz_c) {
      row.bound = *report.lipschitz_c * row.d_b;
      row.satisfied = row.d_f <= row.bound + 1e-9;
      if (!row.satisfied) report.all_satisfied = false;
    }
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace densfp
