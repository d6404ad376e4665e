#include "densfp/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "densfp/error.hpp"

namespace densfp {
namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r' || raw[i] == ',')) ++i;
      std::size_t j = i;
      while (j < raw.size() && !(raw[j] == ' ' || raw[j] == '\t' || raw[j] == '\r' || raw[j] == ',')) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

bool try_number(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

double number(const Line& line, std::size_t i) {
  double v = 0.0;
  if (!try_number(line.tokens[i], v))
    throw ParseError(line.number, "expected a number, got '" + std::string(line.tokens[i]) + "'");
  if (!std::isfinite(v)) throw ParseError(line.number, "non-finite number");
  return v;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_number(double value, int digits) {
  char buf[64];
  const auto res = digits > 0 ? std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits)
                              : std::to_chars(buf, buf + sizeof buf, value);
  std::string s(buf, res.ptr);
  if (s == "-0") s = "0";
  return s;
}

PeriodicSet parse_pps(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t at = 0;
  const int last_line = lines.empty() ? 1 : lines.back().number;
  if (lines.empty() || lines[0].tokens[0] != "dim") throw ParseError(lines.empty() ? 1 : lines[0].number, "expected 'dim <d>'");
  if (lines[0].tokens.size() != 2) throw ParseError(lines[0].number, "expected 'dim <d>'");
  const double dim_value = number(lines[0], 1);
  const int dim = static_cast<int>(dim_value);
  if (dim_value != dim || dim < 1 || dim > 3) throw ParseError(lines[0].number, "dimension must be 1, 2 or 3");
  ++at;

  if (at >= lines.size() || lines[at].tokens.size() != 1 || lines[at].tokens[0] != "basis")
    throw ParseError(at < lines.size() ? lines[at].number : last_line, "expected 'basis'");
  ++at;
  Mat basis = Mat::Identity();
  for (int row = 0; row < dim; ++row, ++at) {
    if (at >= lines.size()) throw ParseError(last_line, "basis needs " + std::to_string(dim) + " rows");
    const Line& line = lines[at];
    if (line.tokens.size() != static_cast<std::size_t>(dim)) {
      throw ParseError(line.number, "basis row needs " + std::to_string(dim) + " numbers, got " +
                                        std::to_string(line.tokens.size()));
    }
    for (int c = 0; c < dim; ++c) basis(c, row) = number(line, c);
  }

  if (at >= lines.size() || lines[at].tokens[0] != "motif")
    throw ParseError(at < lines.size() ? lines[at].number : last_line, "expected 'motif'");
  const Line& header = lines[at];
  long declared = -1;
  if (header.tokens.size() == 2) {
    const double v = number(header, 1);
    if (v < 1 || v != std::floor(v)) throw ParseError(header.number, "motif count must be a positive integer");
    declared = static_cast<long>(v);
  } else if (header.tokens.size() > 2) {
    throw ParseError(header.number, "expected 'motif [count]'");
  }
  ++at;

  std::vector<Vec> motif;
  std::vector<std::string> labels;
  bool any_label = false;
  for (; at < lines.size(); ++at) {
    const Line& line = lines[at];
    if (line.tokens.size() != static_cast<std::size_t>(dim) && line.tokens.size() != static_cast<std::size_t>(dim) + 1) {
      throw ParseError(line.number, "motif row needs " + std::to_string(dim) + " numbers and an optional label");
    }
    Vec f = Vec::Zero();
    for (int c = 0; c < dim; ++c) f[c] = number(line, c);
    motif.push_back(f);
    if (line.tokens.size() > static_cast<std::size_t>(dim)) {
      labels.emplace_back(line.tokens[dim]);
      any_label = true;
    } else {
      labels.emplace_back();
    }
  }
  if (motif.empty()) throw ParseError(last_line, "motif is empty");
  if (declared >= 0 && static_cast<long>(motif.size()) != declared) {
    throw ParseError(last_line, "motif declares " + std::to_string(declared) + " points, found " +
                                    std::to_string(motif.size()));
  }
  if (!any_label) labels.clear();
  try {
    return canonicalize(Lattice(dim, basis), std::move(motif), std::move(labels));
  } catch (const SingularBasis& e) {
    throw ParseError(lines[1].number, e.what());
  }
}

std::string write_pps(const PeriodicSet& set) {
  std::ostringstream out;
  const int d = set.dim();
  out << "dim " << d << "\nbasis\n";
  for (int row = 0; row < d; ++row) {
    for (int c = 0; c < d; ++c) out << (c ? " " : "") << format_number(set.lattice().basis()(c, row));
    out << '\n';
  }
  out << "motif " << set.size() << '\n';
  for (std::size_t m = 0; m < set.size(); ++m) {
    for (int c = 0; c < d; ++c) out << (c ? " " : "") << format_number(set.motif()[m][c]);
    if (!set.labels().empty() && !set.labels()[m].empty()) out << ' ' << set.labels()[m];
    out << '\n';
  }
  return out.str();
}

std::string write_density_csv(const DensityTable& table) {
  if (table.tgrid.empty()) throw InvalidArgument("density table has an empty radius grid");
  std::string out = "t";
  for (int k = 0; k <= table.kmax; ++k) out += ",psi_" + std::to_string(k);
  for (int k = 0; k <= table.kmax; ++k) out += ",rho_" + std::to_string(k);
  out += '\n';
  for (std::size_t j = 0; j < table.tgrid.size(); ++j) {
    out += format_number(table.tgrid[j], 9);
    for (int k = 0; k <= table.kmax; ++k) out += ',' + format_number(table.psi[k][j], 9);
    for (int k = 0; k <= table.kmax; ++k) out += ',' + format_number(table.rho[k][j], 9);
    out += '\n';
  }
  return out;
}

DensityTable parse_density_csv(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (!row.empty()) rows.push_back(row);
    pos = end + 1;
  }
  if (rows.empty()) throw ParseError(1, "empty CSV");
  const auto header = split_csv_line(rows[0]);
  if (header.size() < 3 || header.size() % 2 == 0 || header[0] != "t") throw ParseError(1, "unexpected CSV header");
  const int columns = static_cast<int>(header.size() - 1) / 2;
  DensityTable table;
  table.kmax = columns - 1;
  table.psi.assign(columns + 1, {});
  table.rho.assign(columns, {});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cells = split_csv_line(rows[r]);
    const int line = static_cast<int>(r) + 1;
    if (cells.size() != header.size()) throw ParseError(line, "wrong number of columns");
    double v = 0.0;
    std::vector<double> values;
    for (const auto c : cells) {
      if (!try_number(c, v)) throw ParseError(line, "expected a number, got '" + std::string(c) + "'");
      values.push_back(v);
    }
    table.tgrid.push_back(values[0]);
    for (int k = 0; k < columns; ++k) {
      table.psi[k].push_back(values[1 + k]);
      table.rho[k].push_back(values[1 + columns + k]);
    }
    table.psi[columns].push_back(values[columns] - values[2 * columns]);
  }
  table.psi_error.assign(table.psi.size(), std::vector<double>(table.tgrid.size(), 0.0));
  return table;
}

std::string export_zone_geometry(const ZoneComplex& zones) {
  std::ostringstream out;
  const int d = zones.dim;
  const auto coords = [&](const Vec& v) {
    std::string s;
    for (int i = 0; i < d; ++i) s += (i ? " " : "") + format_number(v[i]);
    return s;
  };
  out << "zones motif " << zones.motif_index << " dim " << d << " kmax " << zones.kmax << '\n';
  out << "center " << coords(zones.center) << '\n';
  out << "cutoff " << format_number(zones.cutoff) << " clip " << format_number(zones.clip_halfwidth) << '\n';
  for (const auto& cell : zones.cells) {
    const auto verts = cell.vertices();
    const auto planes = cell.halfspaces();
    out << "cell " << cell.id << " depth " << cell.depth << " zone " << cell.depth + 1 << '\n';
    out << "vertices " << verts.size() << '\n';
    for (const Vec& v : verts) out << coords(v) << '\n';
    out << "halfspaces " << planes.size() << '\n';
    for (const auto& h : planes) out << coords(h.normal) << ' ' << format_number(h.offset) << '\n';
    out << "end\n";
  }
  return out.str();
}

std::string write_stability_csv(const StabilityReport& report) {
  std::string out = "trial,d_B,d_F,ratio,bound\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.trial) + ',' + format_number(row.d_b, 9) + ',' + format_number(row.d_f, 9) + ',' +
           format_number(row.ratio, 9) + ',' + (report.lipschitz_c ? format_number(row.bound, 9) : std::string("")) +
           '\n';
  }
  return out;
}

std::string write_comparison_csv(const ComparisonReport& report) {
  std::string out = "k,linf,damped\n";
  const double exponent = report.dim > 0 ? static_cast<double>(report.dim - 1) / report.dim : 0.0;
  for (std::size_t k = 0; k < report.rho_distances.size(); ++k) {
    out += std::to_string(k) + ',' + format_number(report.rho_distances[k], 9) + ',';
    out += format_number(report.rho_distances[k] / std::pow(static_cast<double>(k + 1), exponent), 9);
    out += '\n';
  }
  return out;
}

}  // namespace densfp
