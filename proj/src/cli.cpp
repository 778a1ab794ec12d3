#include "qsl/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/acceptance.hpp"
#include "qsl/alpha.hpp"
#include "qsl/bounds.hpp"
#include "qsl/extremal_phase.hpp"
#include "qsl/first_passage.hpp"
#include "qsl/geometry.hpp"
#include "qsl/oracle.hpp"
#include "qsl/parallel.hpp"
#include "qsl/saturators.hpp"
#include "qsl/system_io.hpp"

namespace qsl::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row_strings(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(num(v));
    row_strings(cells);
  }

  std::string str() const { return out_.str(); }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
    out_ << '\n';
  }
  std::ostringstream out_;
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << content;
}

void emit(const std::string& path, const Json& j) { emit(path, j.dump(2) + "\n"); }

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 grid points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) g[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (points - 1);
  g.back() = hi;
  return g;
}

Json vector_json(const std::vector<double>& v) {
  auto a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json point_json(const SpectralPoint& pt) {
  return Json{{"p", vector_json(pt.p)}, {"eps", vector_json(pt.eps)}};
}

struct AlphaTableArgs {
  double delta_min = 0.0;
  double delta_max = 1.0;
  int points = 101;
  double tol = kDefaultAlphaTol;
  std::string out;
};

int alpha_table(const AlphaTableArgs& a) {
  const auto grid = uniform_grid(a.delta_min, a.delta_max, a.points);
  const auto rows = parallel_map<AlphaResult>(grid.size(), [&](std::size_t k) { return alpha(grid[k], a.tol); });
  Csv csv({"delta", "alpha", "z_star", "r_star", "arccos_sqrt_delta"});
  for (const auto& r : rows) csv.row({r.delta, r.value, r.z_star, r.r_star, std::acos(std::sqrt(r.delta))});
  emit(a.out, csv.str());
  return kExitOk;
}

struct BoundsTableArgs {
  std::vector<double> delta_grid;
  int points = 101;
  double normalized_mean = 1.0;
  double dual_mean = 1.0;
  double uncertainty = 1.0;
  std::string out;
};

int bounds_table(const BoundsTableArgs& a) {
  const auto grid = a.delta_grid.empty() ? uniform_grid(0.0, 1.0, a.points) : a.delta_grid;
  const EnergyStats stats{a.normalized_mean, a.uncertainty * a.uncertainty, a.normalized_mean, a.dual_mean};
  const auto rows = parallel_map<BoundReport>(grid.size(), [&](std::size_t k) { return bound_report(grid[k], stats); });
  Csv csv({"delta", "tau_mt", "tau_ml", "tau_ml_dual", "tau_max", "tau1", "tau2", "tau3"});
  for (const auto& b : rows) csv.row({b.delta, b.tau_mt, b.tau_ml, b.tau_ml_dual, b.tau_max, b.tau1, b.tau2, b.tau3});
  emit(a.out, csv.str());
  return kExitOk;
}

struct SaturatorArgs {
  std::string kind = "ml";
  double delta = 0.5;
  double eps0 = 0.0;
  double gap = 1.0;
  int dim = 2;
  std::string out;
};

int make_saturator(const SaturatorArgs& a) {
  if (!(a.gap > 0.0)) throw Error(ErrorCode::InvalidArgument, "--gap must be positive");
  const auto sys =
      make_saturating_system(saturator_kind_from_string(a.kind), a.delta, a.eps0, a.eps0 + a.gap, a.dim);
  emit(a.out, to_json(describe(sys)));
  return kExitOk;
}

struct VerifyArgs {
  std::string system;
  double delta = -1.0;
  double t_max = 0.0;
  int n_scan = kDefaultScanPoints;
  std::string out;
};

int verify(const VerifyArgs& a) {
  const auto sys = read_system(a.system);
  double delta = a.delta;
  if (delta < 0.0) {
    if (!sys.delta) throw Error(ErrorCode::InvalidArgument, "--delta is required when the system has no delta field");
    delta = *sys.delta;
  }
  const double t_max = a.t_max > 0.0 ? a.t_max : default_t_max(sys.hamiltonian);
  const auto rep = verify_bounds(sys.hamiltonian, sys.state, delta, t_max, a.n_scan);
  const auto stats = energy_stats(sys.hamiltonian, sys.state);

  Json j;
  j["delta"] = delta;
  j["t_max"] = t_max;
  j["n_scan"] = a.n_scan;
  j["reached"] = rep.time.has_value();
  j["time"] = rep.time ? Json(*rep.time) : Json(nullptr);
  j["energy"] = Json{{"mean", stats.mean},
                     {"uncertainty", stats.uncertainty()},
                     {"normalized_mean", stats.normalized_mean},
                     {"dual_mean", stats.dual_mean}};
  if (sys.predicted_time) j["predicted_time"] = *sys.predicted_time;
  auto checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(Json{{"name", c.name}, {"bound", c.bound}, {"satisfied", c.satisfied}, {"saturated", c.saturated}});
  }
  j["bounds"] = std::move(checks);
  j["all_satisfied"] = rep.all_satisfied();
  emit(a.out, j);
  return rep.all_satisfied() ? kExitOk : kExitFailure;
}

struct GeometryArgs {
  std::string system;
  int sigma_level = 0;
  double tau = 1.0;
  int steps = 2000;
  int s_points = kDefaultSurfacePoints;
  std::string out;
  std::string curve_csv;
};

int geometry_check(const GeometryArgs& a) {
  const auto sys = read_system(a.system);
  const auto& h = sys.hamiltonian;
  if (a.sigma_level < 0 || a.sigma_level >= h.dim()) {
    throw Error(ErrorCode::InvalidArgument, "--sigma-level must index an eigenvalue");
  }
  if (!(a.tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tau must be positive");
  const PureState sigma(h.eigenstate(a.sigma_level));
  const auto curve = hamiltonian_curve(h, sys.state, a.tau, a.steps);
  const auto stats = energy_stats(h, sys.state);
  const double expected = a.tau * (stats.mean - h.eigenvalues()(a.sigma_level));

  Json j;
  j["sigma_level"] = a.sigma_level;
  j["tau"] = a.tau;
  j["steps"] = a.steps;
  j["fs_length"] = fs_length(curve);
  j["fs_length_expected"] = a.tau * stats.uncertainty();
  j["max_covariant_acceleration"] = max_covariant_acceleration(curve);
  j["expected_phase"] = expected;

  bool ok = std::abs(j["fs_length"].get<double>() - j["fs_length_expected"].get<double>()) <=
            1e-6 * std::max(1.0, a.tau * stats.uncertainty());
  try {
    const double phase = dynamical_phase(curve, sigma);
    j["dynamical_phase"] = phase;
    const bool phase_ok = std::abs(phase - expected) <= 1e-6 * std::max(1.0, std::abs(expected));
    j["dynamical_phase_ok"] = phase_ok;
    ok = ok && phase_ok;
  } catch (const Error& ex) {
    if (ex.code() != ErrorCode::OutsideOmega) throw;
    j["dynamical_phase"] = nullptr;
    j["note"] = "curve leaves the domain where the in-phase lift with sigma exists";
  }
  try {
    const auto surface = ruled_seifert_surface(sigma, curve, a.s_points);
    const double area = symplectic_area(surface);
    const bool area_ok = std::abs(-area - expected) <= 1e-4;
    j["radius"] = surface.radius();
    j["symplectic_area"] = area;
    j["area_ok"] = area_ok;
    j["aa_phase_mod_2pi"] = aa_phase_mod_2pi(surface);
    ok = ok && area_ok;
  } catch (const Error& ex) {
    if (ex.code() != ErrorCode::NotOnGeodesicSphere && ex.code() != ErrorCode::DegenerateGeodesic) throw;
    j["symplectic_area"] = nullptr;
  }
  j["ok"] = ok;
  emit(a.out, j);

  if (!a.curve_csv.empty()) {
    std::vector<std::string> header{"t"};
    for (Eigen::Index k = 0; k < curve.dim(); ++k) {
      header.push_back("re" + std::to_string(k));
      header.push_back("im" + std::to_string(k));
    }
    Csv csv(header);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      std::vector<double> row{curve.step() * static_cast<double>(i)};
      for (Eigen::Index k = 0; k < curve.dim(); ++k) {
        row.push_back(curve[i][k].real());
        row.push_back(curve[i][k].imag());
      }
      csv.row(row);
    }
    emit(a.curve_csv, csv.str());
  }
  return ok ? kExitOk : kExitFailure;
}

struct OracleArgs {
  int dim = 3;
  double delta = 0.5;
  OracleConfig config;
  std::string out;
};

int oracle(const OracleArgs& a) {
  const auto res = minimize_over_M(a.dim, a.delta, a.config);
  const double target = alpha(a.delta).value;
  const StationarityReport st{res.stationarity_residual, res.multipliers};
  const double quad = quadratic_relation_residual(res.argmin, a.delta, st, a.config);
  const bool ok = std::abs(res.min_value - target) < 1e-3 && res.stationarity_residual < 1e-6 &&
                  res.structure.ground_occupied && res.structure.nonzero_eps_equal;

  Json j;
  j["dimension"] = res.n;
  j["delta"] = res.delta;
  j["starts"] = a.config.starts;
  j["seed"] = a.config.seed;
  j["feasible_starts"] = res.feasible_starts;
  j["min_value"] = res.min_value;
  j["alpha"] = target;
  j["argmin"] = point_json(res.argmin);
  j["ground_occupied"] = res.structure.ground_occupied;
  j["nonzero_eps_equal"] = res.structure.nonzero_eps_equal;
  j["distinct_nonzero_phases"] = res.structure.n_distinct_nonzero;
  j["stationarity_residual"] = res.stationarity_residual;
  j["multipliers"] = vector_json(res.multipliers);
  j["quadratic_relation_residual"] = quad;
  j["ok"] = ok;
  emit(a.out, j);
  return ok ? kExitOk : kExitFailure;
}

struct ExtremalArgs {
  double delta = 0.5;
  int r_grid = 1001;
  std::string out;
};

int extremal(const ExtremalArgs& a) {
  if (a.delta < 0.0 || a.delta >= 1.0) throw Error(ErrorCode::InvalidArgument, "--delta must lie in [0, 1)");
  const auto grid = uniform_grid(r_lower(a.delta), r_upper(a.delta), a.r_grid);
  const auto values =
      parallel_map<double>(grid.size(), [&](std::size_t k) { return extreme_value(grid[k], a.delta).first; });
  Csv csv({"r", "extreme_value", "running_min"});
  double running = values.front();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    running = std::min(running, values[k]);
    csv.row({grid[k], values[k], running});
  }
  emit(a.out, csv.str());
  return kExitOk;
}

struct SelftestArgs {
  std::uint64_t seed = kAcceptanceSeed;
  std::vector<int> only;
};

int selftest(const SelftestArgs& a) {
  bool ok = true;
  run_acceptance(a.seed, a.only, [&](const CriterionResult& r) {
    ok = ok && r.passed;
    std::cout << format_result(r) << std::endl;
  });
  return ok ? kExitOk : kExitFailure;
}

bool usage_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidState:
    case ErrorCode::InvalidTolerance:
    case ErrorCode::DimensionTooSmall:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::OutsideFeasibleInterval:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Quantum speed limit toolkit"};
  app.require_subcommand(1);

  AlphaTableArgs at;
  auto* cmd_alpha = app.add_subcommand("alpha-table", "Tabulate alpha(delta) and its minimizer");
  cmd_alpha->add_option("--delta-min", at.delta_min, "Smallest fidelity")->capture_default_str();
  cmd_alpha->add_option("--delta-max", at.delta_max, "Largest fidelity")->capture_default_str();
  cmd_alpha->add_option("--points", at.points, "Grid points")->capture_default_str();
  cmd_alpha->add_option("--tol", at.tol, "Golden-section tolerance")->capture_default_str();
  cmd_alpha->add_option("--out", at.out, "CSV output (stdout when omitted)");

  BoundsTableArgs bt;
  auto* cmd_bounds = app.add_subcommand("bounds-table", "Tabulate every time bound over a fidelity grid");
  cmd_bounds->add_option("--delta-grid", bt.delta_grid, "Explicit fidelities, comma separated")->delimiter(',');
  cmd_bounds->add_option("--points", bt.points, "Uniform grid points on [0, 1] when no grid is given")
      ->capture_default_str();
  cmd_bounds->add_option("--normalized-mean", bt.normalized_mean, "<H> - eps0")->capture_default_str();
  cmd_bounds->add_option("--dual-mean", bt.dual_mean, "eps_max - <H>")->capture_default_str();
  cmd_bounds->add_option("--uncertainty", bt.uncertainty, "Energy standard deviation")->capture_default_str();
  cmd_bounds->add_option("--out", bt.out, "CSV output (stdout when omitted)");

  SaturatorArgs sa;
  auto* cmd_sat = app.add_subcommand("make-saturator", "Write a system that saturates one bound");
  cmd_sat->add_option("--kind", sa.kind, "ml, dual or mt")
      ->check(CLI::IsMember({"ml", "dual", "mt"}))
      ->capture_default_str();
  cmd_sat->add_option("--delta", sa.delta, "Target fidelity")->capture_default_str();
  cmd_sat->add_option("--eps0", sa.eps0, "Lowest energy")->capture_default_str();
  cmd_sat->add_option("--gap", sa.gap, "Spectral width eps1 - eps0")->capture_default_str();
  cmd_sat->add_option("--dim", sa.dim, "Hilbert space dimension")->capture_default_str();
  cmd_sat->add_option("--out", sa.out, "JSON output (stdout when omitted)");

  VerifyArgs va;
  auto* cmd_verify = app.add_subcommand(
      "verify",
      "Measure the first-passage time and compare it with every bound.\n"
      "The uniform scan must resolve the fastest oscillation, so a narrow first crossing is\n"
      "not stepped over: choose n_scan >= 8 * (eps_max - eps0) * t_max.");
  cmd_verify->add_option("--system", va.system, "System JSON")->required()->check(CLI::ExistingFile);
  cmd_verify->add_option("--delta", va.delta, "Target fidelity (defaults to the file's delta)");
  cmd_verify->add_option("--t-max", va.t_max, "Search horizon (defaults to 4 pi / smallest gap)");
  cmd_verify->add_option("--n-scan", va.n_scan, "Uniform scan samples")->capture_default_str();
  cmd_verify->add_option("--out", va.out, "JSON report (stdout when omitted)");

  GeometryArgs ga;
  auto* cmd_geo = app.add_subcommand("geometry-check", "Check phase and area identities along the evolution");
  cmd_geo->add_option("--system", ga.system, "System JSON")->required()->check(CLI::ExistingFile);
  cmd_geo->add_option("--sigma-level", ga.sigma_level, "Eigen-index of the reference state")->capture_default_str();
  cmd_geo->add_option("--tau", ga.tau, "Evolution time")->capture_default_str();
  cmd_geo->add_option("--steps", ga.steps, "Time steps")->capture_default_str();
  cmd_geo->add_option("--s-points", ga.s_points, "Radial surface samples")->capture_default_str();
  cmd_geo->add_option("--out", ga.out, "JSON report (stdout when omitted)");
  cmd_geo->add_option("--curve-csv", ga.curve_csv, "Also write the sampled curve as CSV");

  OracleArgs oa;
  auto* cmd_oracle = app.add_subcommand("oracle", "Minimize the spectral action over the constraint set");
  cmd_oracle->add_option("--dim", oa.dim, "Number of levels")->capture_default_str();
  cmd_oracle->add_option("--delta", oa.delta, "Target fidelity")->capture_default_str();
  cmd_oracle->add_option("--starts", oa.config.starts, "Multi-start count")->capture_default_str();
  cmd_oracle->add_option("--seed", oa.config.seed, "Master seed")->capture_default_str();
  cmd_oracle->add_option("--tol", oa.config.tol, "Optimizer tolerance")->capture_default_str();
  cmd_oracle->add_option("--out", oa.out, "JSON output (stdout when omitted)");

  ExtremalArgs ea;
  auto* cmd_ext = app.add_subcommand("extremal", "Tabulate the positive extreme value over feasible radii");
  cmd_ext->add_option("--delta", ea.delta, "Target fidelity")->capture_default_str();
  cmd_ext->add_option("--r-grid", ea.r_grid, "Radius grid points")->capture_default_str();
  cmd_ext->add_option("--out", ea.out, "CSV output (stdout when omitted)");

  SelftestArgs st;
  auto* cmd_self = app.add_subcommand("selftest", "Run the acceptance suite");
  cmd_self->add_option("--seed", st.seed, "Master seed")->capture_default_str();
  cmd_self->add_option("--only", st.only, "Criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_alpha) return alpha_table(at);
    if (*cmd_bounds) return bounds_table(bt);
    if (*cmd_sat) return make_saturator(sa);
    if (*cmd_verify) return verify(va);
    if (*cmd_geo) return geometry_check(ga);
    if (*cmd_oracle) return oracle(oa);
    if (*cmd_ext) return extremal(ea);
    if (*cmd_self) return selftest(st);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage_error(e.code()) ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qsl::cli
