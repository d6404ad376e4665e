#include "densfp/selftest.hpp"

#include <cmath>

#include "densfp/fingerprint.hpp"
#include "densfp/io.hpp"
#include "densfp/zones.hpp"

namespace densfp {
namespace {

constexpr const char* kSquare = "dim 2\nbasis\n1 0\n0 1\nmotif\n0 0\n";
constexpr const char* kSquareSupercell =
    "dim 2\nbasis\n2 0\n0 2\nmotif\n0 0\n0.5 0\n0 0.5\n0.5 0.5\n";
constexpr const char* kHexagonal = "dim 2\nbasis\n1 0\n0.5 0.8660254037844386\nmotif\n0 0\n";
constexpr const char* kTwoPoint = "dim 2\nbasis\n1 0\n0.3 1.1\nmotif\n0.1 0.2\n0.62 0.57\n";

SelfTestCheck supercell_check() {
  const PeriodicSet primitive = parse_pps(kSquare);
  const PeriodicSet super = parse_pps(kSquareSupercell);
  FingerprintConfig cfg;
  cfg.kmax = 4;
  cfg.t_steps = 33;
  cfg.t_max = 2.0;
  const auto a = psi_table(primitive, cfg);
  const auto b = psi_table(super, cfg);
  double worst = 0.0;
  for (int k = 0; k <= cfg.kmax; ++k) {
    for (std::size_t j = 0; j < a.tgrid.size(); ++j) worst = std::max(worst, std::abs(a.psi[k][j] - b.psi[k][j]));
  }
  return {"supercell invariance (Z^2 vs 2Z^2 with 4-point motif)", worst <= 5e-3,
          "max |psi difference| = " + format_number(worst, 3)};
}

SelfTestCheck tiling_check(const char* name, const char* text, int kmax) {
  const PeriodicSet set = parse_pps(text);
  double worst = 0.0;
  std::vector<ZoneComplex> zones;
  for (std::size_t m = 0; m < set.size(); ++m) zones.push_back(build_zones(set, static_cast<int>(m), kmax));
  for (int k = 1; k <= kmax; ++k) {
    double total = 0.0;
    for (const auto& zc : zones) total += zone_volume(zc, k);
    worst = std::max(worst, std::abs(total - set.lattice().volume()));
  }
  return {std::string("zone tiling, ") + name, worst <= 1e-6, "max |sum Vol(Z_k) - Vol(U)| = " + format_number(worst, 3)};
}

}  // namespace

std::vector<SelfTestCheck> run_selftest() {
  return {supercell_check(), tiling_check("square lattice", kSquare, 6), tiling_check("hexagonal lattice", kHexagonal, 6),
          tiling_check("two-point motif", kTwoPoint, 6)};
}

}  // namespace densfp
