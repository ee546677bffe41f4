// driftlab command line: simulate, profile-eval, verify, fit, accept.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "driftlab/dynamics/stepper.hpp"
#include "driftlab/harness/acceptance.hpp"
#include "driftlab/harness/config.hpp"
#include "driftlab/harness/csv.hpp"
#include "driftlab/harness/experiment.hpp"
#include "driftlab/harness/fit.hpp"
#include "driftlab/harness/verify.hpp"
#include "driftlab/profiles/expansion.hpp"

namespace fs = std::filesystem;
using namespace driftlab;

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitBadConfig = 2;

Vec2 parse_pair(const std::string& s, const char* what) {
  std::istringstream is(s);
  Vec2 v{};
  if (!(is >> v[0] >> v[1])) throw ConfigError(std::string(what) + ": expected two numbers, e.g. \"1 0\"");
  return v;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, const std::string& time_shift) {
  RunConfig cfg = load_run_config(config_path);
  if (time_shift == "auto") {
    cfg.report.time_shift.reset();
  } else if (!time_shift.empty()) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(time_shift, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != time_shift.size() || !(v >= 0.0)) throw ConfigError("--time-shift: expected a number >= 0 or auto");
    cfg.report.time_shift = v;
  }
  fs::create_directories(out_dir);
  const ExperimentPlan plan = make_plan(fs::path(config_path).stem().string(), cfg);
  const RunResult r = run(cfg.sim);
  const ProfileMoments pm = profile_moments(r, cfg);
  const auto rows = residual_norms(r.snapshots, plan, pm);

  {
    std::ofstream d(out_dir + "/diagnostics.csv");
    write_diagnostics_csv(d, r.diagnostics);
    std::ofstream res(out_dir + "/residuals.csv");
    write_residual_csv(res, rows);
    std::ofstream echo(out_dir + "/config.ini");
    write_run_config(echo, cfg);
  }
  if (cfg.report.write_snapshots) {
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
      std::ostringstream name;
      name << out_dir << "/snapshot_" << std::setw(3) << std::setfill('0') << k << ".txt";
      std::ofstream s(name.str());
      write_snapshot(s, r.snapshots[k].field, r.snapshots[k].t, cfg.sim.model.kind);
    }
  }
  std::cout << "model " << to_string(cfg.sim.model.kind) << ": " << r.steps << " steps to t=" << cfg.sim.t_end
            << ", M0=" << pm.m0 << ", profile M1=(" << pm.m1[0] << ", " << pm.m1[1] << "), time shift " << pm.time_shift
            << "\n";
  if (cfg.sim.model.uses_drift_vector() && cfg.report.estimate_ambiguous) {
    const auto& a = pm.ambiguous;
    std::cout << "flux-excess constant " << a.value << " (quadrature " << a.quadrature << ", tail " << a.tail
              << ", exponent " << a.tail_exponent << (a.fitted_exponent ? " fitted" : " default") << ")\n";
  }
  try {
    for (const auto& f : fit_rows(rows, cfg.report.fit_lo, cfg.report.fit_hi)) {
      std::cout << "  level " << std::setw(8) << std::left << f.level << std::right << " q=" << std::setw(3)
                << format_q(f.q) << "  slope " << std::fixed << std::setprecision(3) << f.slope << " +- "
                << f.stderr_slope << std::defaultfloat << "\n";
    }
  } catch (const std::invalid_argument& e) {
    std::cout << "  (no fits: " << e.what() << ")\n";
  }
  std::cout << "wrote " << out_dir << "/diagnostics.csv, residuals.csv\n";
  return 0;
}

int cmd_profile_eval(const std::string& model_name, const std::string& a_text, double t, std::size_t n, double length,
                     double m0, const std::string& m1_text, int terms, const std::string& out_path) {
  ModelSpec model{parse_model_kind(model_name), {0.0, 0.0}};
  if (model.uses_drift_vector()) model.a = parse_pair(a_text, "--a");
  const Vec2 m1 = parse_pair(m1_text, "--m1");
  const Grid grid = make_grid(n, length);
  const StackFlags full = StackFlags::full(model.kind);

  ExpansionParams p{m0, m1, model.a, model.uses_drift_vector() ? convection_mass(model.kind, m0) : 0.0, terms};
  std::vector<std::pair<std::string, Field>> cols;
  cols.emplace_back("leading", ExpansionTerm{TermKind::leading, p}.sample(grid, t));
  cols.emplace_back("moment", ExpansionTerm{TermKind::moment, p}.sample(grid, t));
  if (full.logshift) cols.emplace_back("logshift", ExpansionTerm{TermKind::logshift, p}.sample(grid, t));
  if (full.j1) {
    cols.emplace_back("j1", ExpansionTerm{model.kind == ModelKind::fr ? TermKind::j1_fr : TermKind::j1_cd, p}.sample(grid, t));
  }
  cols.emplace_back("stack", expansion_stack(model, t, grid, m0, m1, full, terms));

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw ConfigError("cannot write " + out_path);
    os = &file;
  }
  *os << "x1,x2";
  for (const auto& c : cols) *os << ',' << c.first;
  *os << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      *os << format_number(grid.coordinate(i)) << ',' << format_number(grid.coordinate(j));
      for (const auto& c : cols) *os << ',' << format_number(c.second(i, j));
      *os << '\n';
    }
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  const auto checks = run_verify_suite(suite);
  print_checks(std::cout, checks);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.passed;
  std::cout << (ok ? "PASS" : "FAIL") << " verify " << suite << '\n';
  return ok ? 0 : kExitFailedCheck;
}

int cmd_fit(const std::string& input, const std::string& level, const std::string& q_text, double lo, double hi,
            const std::optional<double>& expect, double tol) {
  std::ifstream in(input);
  if (!in) throw ConfigError("fit: cannot open " + input);
  const double q = parse_q(q_text);
  std::vector<double> ts, ns;
  for (const auto& r : select_rows(read_residual_csv(in), level, q)) {
    if (r.t < lo || r.t > hi) continue;
    ts.push_back(r.t);
    ns.push_back(r.norm);
  }
  FitResult f;
  try {
    f = fit_decay(ts, ns);
  } catch (const NonPositiveNorm& e) {
    std::cout << "PASS-by-floor: " << e.what() << '\n';
    return 0;
  }
  std::cout << std::fixed << std::setprecision(4) << "level " << level << " q=" << q_text << ": slope " << f.slope
            << " +- " << f.stderr_slope << " (intercept " << f.intercept << ", " << f.points << " points)\n";
  if (expect) {
    const bool ok = std::abs(f.slope - *expect) <= tol;
    std::cout << (ok ? "PASS" : "FAIL") << " slope within " << tol << " of " << *expect << '\n';
    return ok ? 0 : kExitFailedCheck;
  }
  return 0;
}

int cmd_accept(AcceptanceOptions opts) {
  const auto results = run_acceptance(opts, std::cerr);
  print_criteria(std::cout, results);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  return ok ? 0 : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral simulator and large-time profile toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", time_shift;
  auto* sim = app.add_subcommand("simulate", "Run a config file; write diagnostics, residuals and snapshots");
  sim->add_option("--config", config_path, "INI config file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_dir, "Output directory");
  sim->add_option("--time-shift", time_shift, "Compare u(t) with profiles at t + shift; a number or auto");

  std::string model_name = "QG", a_text = "1 0", m1_text = "0 0", profile_out;
  double t = 1.0, length = 40.0, m0 = 1.0;
  std::size_t n = 128;
  int terms = kDefaultSeriesTerms;
  auto* prof = app.add_subcommand("profile-eval", "Sample the expansion terms of a model on a grid");
  prof->add_option("--model", model_name, "QG, CD, CD2 or FR");
  prof->add_option("--a", a_text, "Drift vector for CD/CD2, e.g. \"1 0\"");
  prof->add_option("--t", t, "Time")->check(CLI::PositiveNumber);
  prof->add_option("--n", n, "Grid points per axis");
  prof->add_option("--length", length, "Box side");
  prof->add_option("--m0", m0, "Mass M0");
  prof->add_option("--m1", m1_text, "First moment M1 = -int x u0, e.g. \"-0.8 0\"");
  prof->add_option("--terms", terms, "Series terms");
  prof->add_option("--out", profile_out, "CSV path (default stdout)");

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "Run operator and identity checks");
  ver->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(verify_suite_names()));

  std::string input, level = "0", q_text = "inf";
  double lo = 10.0, hi = 100.0, tol = 0.1;
  std::optional<double> expect;
  auto* fit = app.add_subcommand("fit", "Fit a power law to residual norms from a residual CSV");
  fit->add_option("--input", input, "residuals.csv from simulate")->required();
  fit->add_option("--level", level, "raw, 0, 1, 1-nolog, 1-noj1");
  fit->add_option("--q", q_text, "1, 2 or inf");
  fit->add_option("--lo", lo, "Fit window start");
  fit->add_option("--hi", hi, "Fit window end");
  fit->add_option("--expect", expect, "Expected slope; exit 1 when outside --tol");
  fit->add_option("--tol", tol, "Tolerance for --expect");

  AcceptanceOptions acc;
  auto* accept = app.add_subcommand("accept", "Run the acceptance criteria and print PASS/FAIL per criterion");
  accept->add_option("--out", acc.output_dir, "Directory for per-experiment CSVs");
  accept->add_option("--n", acc.n, "Grid points for the long runs");
  accept->add_option("--length", acc.length, "Box side for the long runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitBadConfig;
  }

  try {
    if (*sim) return cmd_simulate(config_path, out_dir, time_shift);
    if (*prof) return cmd_profile_eval(model_name, a_text, t, n, length, m0, m1_text, terms, profile_out);
    if (*ver) return cmd_verify(suite);
    if (*fit) return cmd_fit(input, level, q_text, lo, hi, expect, tol);
    if (*accept) return cmd_accept(acc);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailedCheck;
  }
  return 0;
}
