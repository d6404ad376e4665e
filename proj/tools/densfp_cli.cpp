#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "densfp/compare.hpp"
#include "densfp/error.hpp"
#include "densfp/fingerprint.hpp"
#include "densfp/io.hpp"
#include "densfp/selftest.hpp"
#include "densfp/volumes.hpp"
#include "densfp/zones.hpp"

namespace {

using namespace densfp;

PeriodicSet load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pps(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.message());
  }
}

void save(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

FingerprintMethod parse_method(const std::string& s) {
  return s == "oracle" ? FingerprintMethod::oracle : FingerprintMethod::zones;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density fingerprints of periodic point sets"};
  app.require_subcommand(1);

  std::string input, input_b, output, method = "zones", metric = "both", mode = "grid";
  int kmax = 8, steps = 64, point = 0, trials = 20, threads = 0;
  double tmax = 0.0, t = 0.0, delta = 0.0;
  std::uint64_t seed = 0x5eed;
  std::int64_t mc_samples = 200000, n = 1 << 20;
  bool jitter = false;

  auto* fp = app.add_subcommand("fingerprint", "Compute density functions psi_k and rho_k");
  fp->add_option("file", input, "PPS structure file")->required();
  fp->add_option("--kmax", kmax, "Highest density function index")->required();
  fp->add_option("--steps", steps, "Radius grid points")->required();
  fp->add_option("--tmax", tmax, "Largest radius (default: vanishing bound)");
  fp->add_option("--method", method, "zones or oracle")->check(CLI::IsMember({"zones", "oracle"}));
  fp->add_option("--seed", seed, "Master seed for Monte Carlo streams");
  fp->add_option("--mc-samples", mc_samples, "Monte Carlo samples per zone (3D)");
  fp->add_option("--threads", threads, "Worker threads (0 = all cores)");
  fp->add_flag("--jitter", jitter, "Retry degenerate arrangements with a tiny deterministic jitter");
  fp->add_option("-o,--output", output, "Output CSV")->required();

  std::string csv_out;
  auto* cmp = app.add_subcommand("compare", "Fingerprint and bottleneck distances between two sets");
  cmp->add_option("a", input, "First PPS file")->required();
  cmp->add_option("b", input_b, "Second PPS file")->required();
  cmp->add_option("--kmax", kmax)->required();
  cmp->add_option("--steps", steps)->required();
  cmp->add_option("--metric", metric)->check(CLI::IsMember({"fingerprint", "bottleneck", "both"}));
  cmp->add_option("--seed", seed);
  cmp->add_option("--mc-samples", mc_samples);
  cmp->add_option("--threads", threads);
  cmp->add_option("-o,--output", csv_out, "Optional per-k distance CSV");

  auto* zn = app.add_subcommand("zones", "Export Brillouin zone cells of one motif point");
  zn->add_option("file", input)->required();
  zn->add_option("--point", point, "Motif index")->required();
  zn->add_option("--kmax", kmax)->required();
  zn->add_option("-o,--output", output)->required();

  auto* orc = app.add_subcommand("oracle", "Brute-force psi_k(t) by sampling the unit cell");
  orc->add_option("file", input)->required();
  orc->add_option("--kmax", kmax)->required();
  orc->add_option("--t", t)->required();
  orc->add_option("--mode", mode)->check(CLI::IsMember({"grid", "mc"}));
  orc->add_option("--n", n)->required();
  orc->add_option("--seed", seed);

  auto* st = app.add_subcommand("stability", "Perturbation trials against the Lipschitz bound");
  st->add_option("file", input)->required();
  st->add_option("--delta", delta)->required();
  st->add_option("--trials", trials)->required();
  st->add_option("--kmax", kmax)->required();
  st->add_option("--steps", steps)->required();
  st->add_option("--seed", seed)->required();
  st->add_option("--mc-samples", mc_samples);
  st->add_option("--threads", threads);
  st->add_option("-o,--output", output)->required();

  auto* self = app.add_subcommand("selftest", "Supercell invariance and zone tiling checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  FingerprintConfig cfg;
  cfg.kmax = kmax;
  cfg.t_steps = steps;
  cfg.t_max = tmax;
  cfg.method = parse_method(method);
  cfg.seed = seed;
  cfg.mc_samples = mc_samples;
  cfg.threads = threads;
  cfg.jitter_on_degeneracy = jitter;

  try {
    if (*fp) {
      save(output, write_density_csv(psi_table(load(input), cfg)));
    } else if (*cmp) {
      const Metric m = metric == "fingerprint" ? Metric::fingerprint
                       : metric == "bottleneck" ? Metric::bottleneck
                                                : Metric::both;
      const ComparisonReport r = compare(load(input), load(input_b), cfg, m);
      if (r.d_b) std::cout << "d_B " << format_number(*r.d_b, 9) << '\n';
      if (r.d_f) std::cout << "d_F " << format_number(*r.d_f, 9) << '\n';
      for (std::size_t k = 0; k < r.rho_distances.size(); ++k)
        std::cout << "linf rho_" << k << ' ' << format_number(r.rho_distances[k], 9) << '\n';
      std::cout << "packing " << format_number(r.packing, 9) << "\ncovering " << format_number(r.covering, 9) << '\n';
      if (r.lipschitz_c) std::cout << "lipschitz_C " << format_number(*r.lipschitz_c, 9) << '\n';
      if (r.bound_satisfied) std::cout << "bound_satisfied " << (*r.bound_satisfied ? "yes" : "no") << '\n';
      if (!csv_out.empty()) save(csv_out, write_comparison_csv(r));
    } else if (*zn) {
      const PeriodicSet set = load(input);
      save(output, export_zone_geometry(build_zones(set, point, kmax)));
    } else if (*orc) {
      const auto psi = oracle_psi(load(input), kmax, t, mode == "mc" ? OracleMode::monte_carlo : OracleMode::grid, n, seed);
      for (int k = 1; k <= kmax; ++k) std::cout << "psi_" << k << ' ' << format_number(psi[k - 1], 9) << '\n';
    } else if (*st) {
      const StabilityReport r = stability_trial(load(input), delta, trials, cfg, seed);
      save(output, write_stability_csv(r));
      std::cout << "max_ratio " << format_number(r.max_ratio, 9) << '\n';
      if (r.lipschitz_c) std::cout << "lipschitz_C " << format_number(*r.lipschitz_c, 9) << '\n';
      if (r.all_satisfied) std::cout << "bound_satisfied " << (*r.all_satisfied ? "yes" : "no") << '\n';
      if (!r.note.empty()) std::cout << "note " << r.note << '\n';
    } else if (*self) {
      bool ok = true;
      for (const auto& c : run_selftest()) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
        ok = ok && c.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
