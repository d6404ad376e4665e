#pragma once

#include <string>
#include <string_view>

#include "densfp/compare.hpp"
#include "densfp/fingerprint.hpp"
#include "densfp/periodic_set.hpp"
#include "densfp/zones.hpp"

namespace densfp {

/// PPS text format:
///
///     # comments run to the end of a line
///     dim 2
///     basis          one basis vector per row
///     1 0
///     0 1
///     motif [count]  fractional coordinates, optional trailing label
///     0 0 Na
///     0.5 0.5 Cl
///
/// Throws ParseError carrying the 1-based line number.
PeriodicSet parse_pps(std::string_view text);
std::string write_pps(const PeriodicSet& set);

/// Header `t,psi_0..psi_K,rho_0..rho_K`, one row per radius, 9 significant digits.
std::string write_density_csv(const DensityTable& table);
DensityTable parse_density_csv(std::string_view text);

/// One record per cell: depth, vertices, supporting halfspaces.
std::string export_zone_geometry(const ZoneComplex& zones);

std::string write_stability_csv(const StabilityReport& report);
std::string write_comparison_csv(const ComparisonReport& report);

/// Shortest decimal that round-trips, or %.{digits}g when digits > 0.
std::string format_number(double value, int digits = 0);

}  // namespace densfp
