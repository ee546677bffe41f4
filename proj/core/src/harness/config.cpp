#include "driftlab/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "driftlab/harness/csv.hpp"

namespace driftlab {

namespace pt = boost::property_tree;

double parse_q(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double q = 0.0;
  try {
    q = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("q: cannot parse '" + s + "'");
  }
  if (used != s.size() || !(q >= 1.0)) throw ConfigError("q: expected a number >= 1 or 'inf', got '" + s + "'");
  return q;
}

std::string format_q(double q) {
  if (std::isinf(q)) return "inf";
  std::ostringstream os;
  os << q;
  return os.str();
}

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double to_number(const std::string& s, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError(key + ": cannot parse number '" + s + "'");
  return v;
}

std::vector<double> numbers(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const auto& w : words(s)) out.push_back(to_number(w, key));
  return out;
}

Vec2 vec2(const std::string& s, const std::string& key) {
  const auto v = numbers(s, key);
  if (v.size() != 2) throw ConfigError(key + ": expected two numbers");
  return {v[0], v[1]};
}

bool boolean(const std::string& s, const std::string& key) {
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw ConfigError(key + ": expected true/false, got '" + s + "'");
}

std::vector<double> snapshot_spec(const std::string& s) {
  const auto w = words(s);
  if (w.empty()) throw ConfigError("time.snapshots: empty");
  if (w[0] == "geom") {
    if (w.size() != 4) throw ConfigError("time.snapshots: expected 'geom <lo> <hi> <count>'");
    const double count = to_number(w[3], "time.snapshots");
    if (count < 1 || count != std::floor(count)) throw ConfigError("time.snapshots: count must be a positive integer");
    return geometric_times(to_number(w[1], "time.snapshots"), to_number(w[2], "time.snapshots"),
                           static_cast<std::size_t>(count));
  }
  if (w[0] == "list") {
    std::vector<double> out;
    for (std::size_t k = 1; k < w.size(); ++k) out.push_back(to_number(w[k], "time.snapshots"));
    for (std::size_t k = 1; k < out.size(); ++k) {
      if (!(out[k] > out[k - 1])) throw ConfigError("time.snapshots: list must be strictly increasing");
    }
    return out;
  }
  throw ConfigError("time.snapshots: expected 'geom ...' or 'list ...'");
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"grid", {"n", "length"}},
      {"model", {"kind", "a"}},
      {"time", {"t_end", "dt_cfl", "dt_max", "dt_growth", "snapshots", "extra_snapshots", "tail_limit"}},
      {"initial", {"preset", "m1", "bumps", "target_m0", "target_m1"}},
      {"report", {"q", "time_shift", "fit_window", "ambiguous", "snapshots", "series_terms"}},
  };
  return keys;
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) throw ConfigError("config: unknown section [" + section + "]");
    if (body.empty() && !body.data().empty()) throw ConfigError("config: key '" + section + "' outside a section");
    for (const auto& [key, _] : body) {
      if (!it->second.count(key)) throw ConfigError("config: unknown key " + section + "." + key);
    }
  }
  auto get = [&](const std::string& path) { return tree.get_optional<std::string>(pt::ptree::path_type(path, '.')); };

  RunConfig cfg;
  SimConfig& sim = cfg.sim;
  if (auto v = get("grid.n")) {
    const double n = to_number(*v, "grid.n");
    if (n < 1 || n != std::floor(n)) throw ConfigError("grid.n: expected a positive integer");
    sim.n = static_cast<std::size_t>(n);
  }
  if (auto v = get("grid.length")) sim.length = to_number(*v, "grid.length");

  if (auto v = get("model.kind")) sim.model.kind = parse_model_kind(*v);
  if (auto v = get("model.a")) sim.model.a = vec2(*v, "model.a");

  if (auto v = get("time.t_end")) sim.t_end = to_number(*v, "time.t_end");
  if (auto v = get("time.dt_cfl")) sim.dt_cfl = to_number(*v, "time.dt_cfl");
  if (auto v = get("time.dt_max")) sim.dt_max = to_number(*v, "time.dt_max");
  if (auto v = get("time.dt_growth")) sim.dt_growth = to_number(*v, "time.dt_growth");
  if (auto v = get("time.tail_limit")) sim.tail_limit = to_number(*v, "time.tail_limit");
  if (auto v = get("time.snapshots")) sim.snapshot_times = snapshot_spec(*v);
  if (auto v = get("time.extra_snapshots")) {
    for (double t : numbers(*v, "time.extra_snapshots")) sim.snapshot_times.push_back(t);
    std::sort(sim.snapshot_times.begin(), sim.snapshot_times.end());
  }

  const std::string preset = get("initial.preset").value_or("default_pair");
  if (preset == "default_pair") {
    sim.initial = InitialDataSpec::default_pair();
  } else if (preset == "isotropic_quad") {
    sim.initial = InitialDataSpec::isotropic_quad(to_number(get("initial.m1").value_or("0"), "initial.m1"));
  } else if (preset == "bumps") {
    const auto spec = get("initial.bumps");
    if (!spec) throw ConfigError("initial.bumps: required when preset = bumps");
    std::istringstream is(*spec);
    for (std::string item; std::getline(is, item, ';');) {
      if (words(item).empty()) continue;
      const auto v = numbers(item, "initial.bumps");
      if (v.size() != 4) throw ConfigError("initial.bumps: each bump is 'amplitude cx cy width'");
      sim.initial.bumps.push_back({v[0], {v[1], v[2]}, v[3]});
    }
  } else {
    throw ConfigError("initial.preset: expected default_pair, isotropic_quad or bumps");
  }
  if (preset != "isotropic_quad" && get("initial.m1")) throw ConfigError("initial.m1: only used by isotropic_quad");
  if (preset != "bumps" && get("initial.bumps")) throw ConfigError("initial.bumps: only used by preset = bumps");
  const auto tm0 = get("initial.target_m0");
  const auto tm1 = get("initial.target_m1");
  if (tm0 || tm1) {
    PrescribedMoments pm;
    if (tm0) pm.m0 = to_number(*tm0, "initial.target_m0");
    if (tm1) pm.m1 = vec2(*tm1, "initial.target_m1");
    sim.initial.target = pm;
  }

  ReportConfig& rep = cfg.report;
  if (auto v = get("report.q")) {
    rep.qs.clear();
    for (const auto& w : words(*v)) rep.qs.push_back(parse_q(w));
    if (rep.qs.empty()) throw ConfigError("report.q: empty");
  }
  if (auto v = get("report.time_shift")) {
    if (*v == "auto") {
      rep.time_shift.reset();
    } else {
      rep.time_shift = to_number(*v, "report.time_shift");
      if (*rep.time_shift < 0.0) throw ConfigError("report.time_shift: must be >= 0 or 'auto'");
    }
  }
  if (auto v = get("report.fit_window")) {
    const Vec2 w = vec2(*v, "report.fit_window");
    if (!(w[0] > 0.0 && w[1] > w[0])) throw ConfigError("report.fit_window: need 0 < lo < hi");
    rep.fit_lo = w[0];
    rep.fit_hi = w[1];
  }
  if (auto v = get("report.ambiguous")) rep.estimate_ambiguous = boolean(*v, "report.ambiguous");
  if (auto v = get("report.snapshots")) rep.write_snapshots = boolean(*v, "report.snapshots");
  if (auto v = get("report.series_terms")) rep.series_terms = static_cast<int>(to_number(*v, "report.series_terms"));

  try {
    sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  return parse_run_config(in);
}

void write_run_config(std::ostream& out, const RunConfig& cfg) {
  const SimConfig& s = cfg.sim;
  auto num = [](double v) { return format_number(v); };
  out << "[grid]\nn = " << s.n << "\nlength = " << num(s.length) << "\n\n";
  out << "[model]\nkind = " << to_string(s.model.kind) << "\n";
  if (s.model.uses_drift_vector()) out << "a = " << num(s.model.a[0]) << " " << num(s.model.a[1]) << "\n";
  out << "\n[time]\nt_end = " << num(s.t_end) << "\ndt_cfl = " << num(s.dt_cfl) << "\ndt_max = " << num(s.dt_max)
      << "\ndt_growth = " << num(s.dt_growth) << "\ntail_limit = " << num(s.tail_limit) << "\n";
  if (!s.snapshot_times.empty()) {
    out << "snapshots = list";
    for (double t : s.snapshot_times) out << " " << num(t);
    out << "\n";
  }
  out << "\n[initial]\npreset = bumps\nbumps =";
  for (std::size_t k = 0; k < s.initial.bumps.size(); ++k) {
    const auto& b = s.initial.bumps[k];
    out << (k ? "; " : " ") << num(b.amplitude) << " " << num(b.centre[0]) << " " << num(b.centre[1]) << " "
        << num(b.width);
  }
  out << "\n";
  if (s.initial.target) {
    out << "target_m0 = " << num(s.initial.target->m0) << "\ntarget_m1 = " << num(s.initial.target->m1[0]) << " "
        << num(s.initial.target->m1[1]) << "\n";
  }
  const ReportConfig& r = cfg.report;
  out << "\n[report]\nq =";
  for (double q : r.qs) out << " " << format_q(q);
  out << "\ntime_shift = " << (r.time_shift ? num(*r.time_shift) : std::string("auto"));
  out << "\nfit_window = " << num(r.fit_lo) << " " << num(r.fit_hi);
  out << "\nambiguous = " << (r.estimate_ambiguous ? "true" : "false");
  out << "\nsnapshots = " << (r.write_snapshots ? "true" : "false");
  out << "\nseries_terms = " << r.series_terms << "\n";
}

}  // namespace driftlab
