#include "driftlab/harness/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "driftlab/harness/config.hpp"

namespace driftlab {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double cell_number(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
}

template <class Row, class Parse>
std::vector<Row> read_rows(std::istream& in, const char* header, std::size_t width, Parse&& parse) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ConfigError("csv: expected header '" + std::string(header) + "', got '" + line + "'");
  std::vector<Row> rows;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != width) throw ConfigError("csv line " + std::to_string(n) + ": expected " + std::to_string(width) + " columns");
    rows.push_back(parse(cells, n));
  }
  return rows;
}

}  // namespace

void write_residual_csv(std::ostream& out, const std::vector<ResidualRow>& rows) {
  out << kResidualHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.t) << ',' << format_q(r.q) << ',' << r.level << ',' << format_number(r.norm) << ','
        << format_number(r.m0) << ',' << format_number(r.m1[0]) << ',' << format_number(r.m1[1]) << ','
        << format_number(r.tail_mass) << '\n';
  }
}

std::vector<ResidualRow> read_residual_csv(std::istream& in) {
  return read_rows<ResidualRow>(in, kResidualHeader, 8, [](const std::vector<std::string>& c, std::size_t n) {
    ResidualRow r;
    r.t = cell_number(c[0], n);
    r.q = parse_q(c[1]);
    r.level = c[2];
    r.norm = cell_number(c[3], n);
    r.m0 = cell_number(c[4], n);
    r.m1 = {cell_number(c[5], n), cell_number(c[6], n)};
    r.tail_mass = cell_number(c[7], n);
    return r;
  });
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRow>& rows) {
  out << kDiagnosticsHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.t) << ',' << format_number(r.l1) << ',' << format_number(r.l2) << ','
        << format_number(r.linf) << ',' << format_number(r.m0) << ',' << format_number(r.m1[0]) << ','
        << format_number(r.m1[1]) << ',' << format_number(r.tail_mass) << ',' << format_number(r.flux_integral[0])
        << ',' << format_number(r.flux_integral[1]) << '\n';
  }
}

std::vector<DiagnosticsRow> read_diagnostics_csv(std::istream& in) {
  return read_rows<DiagnosticsRow>(in, kDiagnosticsHeader, 10, [](const std::vector<std::string>& c, std::size_t n) {
    DiagnosticsRow r;
    r.t = cell_number(c[0], n);
    r.l1 = cell_number(c[1], n);
    r.l2 = cell_number(c[2], n);
    r.linf = cell_number(c[3], n);
    r.m0 = cell_number(c[4], n);
    r.m1 = {cell_number(c[5], n), cell_number(c[6], n)};
    r.tail_mass = cell_number(c[7], n);
    r.flux_integral = {cell_number(c[8], n), cell_number(c[9], n)};
    return r;
  });
}

void write_snapshot(std::ostream& out, const Field& f, double t, ModelKind model) {
  const Grid& g = f.grid();
  out << g.n() << ' ' << format_number(g.length()) << ' ' << format_number(t) << ' ' << to_string(model) << '\n';
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < g.n(); ++j) out << (j ? " " : "") << format_number(f(i, j));
    out << '\n';
  }
}

SnapshotFile read_snapshot(std::istream& in) {
  std::size_t n = 0;
  double length = 0.0, t = 0.0;
  std::string model;
  if (!(in >> n >> length >> t >> model)) throw ConfigError("snapshot: bad header, expected 'N L t model'");
  Field f(make_grid(n, length));
  for (double& v : f.values()) {
    if (!(in >> v)) throw ConfigError("snapshot: truncated payload");
  }
  return {std::move(f), t, parse_model_kind(model)};
}

}  // namespace driftlab
