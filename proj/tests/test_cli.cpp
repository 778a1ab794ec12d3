#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "qsl/cli.hpp"
#include "qsl/core_quantum.hpp"
#include "qsl/saturators.hpp"
#include "qsl/system_io.hpp"

using namespace qsl;
namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qsl");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qsl_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("system JSON round trip") {
  const auto sys = ml_saturating_system(0.4, 0.5, 2.0, 3);
  const auto j = to_json(describe(sys));
  const auto back = system_from_json(nlohmann::json::parse(j.dump()));
  CHECK((back.hamiltonian.matrix() - sys.hamiltonian.matrix()).norm() < 1e-15);
  CHECK((back.state.amplitudes() - sys.state.amplitudes()).norm() < 1e-15);
  REQUIRE(back.predicted_time);
  CHECK(*back.predicted_time == sys.predicted_time);
  REQUIRE(back.kind);
  CHECK(*back.kind == "ml");
  CHECK(j.begin().key() == "dimension");
}

TEST_CASE("malformed systems are rejected") {
  CHECK_THROWS_AS(system_from_json(nlohmann::json::parse(R"({"dimension": 2})")), Error);
  CHECK_THROWS_AS(
      system_from_json(nlohmann::json::parse(R"({"dimension": 2, "hamiltonian": [[0,0]], "state": [[1,0],[0,0]]})")),
      Error);
  CHECK_THROWS_AS(system_from_json(nlohmann::json::parse(
                      R"({"dimension": 2, "hamiltonian": [[0,0],[1,0],[0,0],[0,0]], "state": [[1,0],[0,0]]})")),
                  Error);
  CHECK_THROWS_AS(read_system("/nonexistent/system.json"), Error);
}

TEST_CASE("alpha table") {
  TempDir dir;
  const auto out = dir / "alpha.csv";
  CHECK(run_cli({"alpha-table", "--points", "101", "--out", out}) == 0);
  const auto text = slurp(out);
  CHECK(text.find('\r') == std::string::npos);
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "delta,alpha,z_star,r_star,arccos_sqrt_delta");
  std::getline(ss, line);
  const auto first = split(line);
  REQUIRE(first.size() == 5);
  CHECK(std::stod(first[0]) == 0.0);
  CHECK(std::abs(std::stod(first[1]) - kPi / 2.0) < 1e-10);
  int rows = 1;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 101);
}

TEST_CASE("outputs are deterministic") {
  TempDir dir;
  CHECK(run_cli({"bounds-table", "--points", "21", "--out", dir / "a.csv"}) == 0);
  CHECK(run_cli({"bounds-table", "--points", "21", "--out", dir / "b.csv"}) == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.csv").rfind("delta,tau_mt,tau_ml,tau_ml_dual,tau_max,tau1,tau2,tau3\n", 0) == 0);

  CHECK(run_cli({"oracle", "--dim", "3", "--delta", "0.5", "--starts", "8", "--seed", "5", "--out", dir / "o1.json"}) ==
        0);
  CHECK(run_cli({"oracle", "--dim", "3", "--delta", "0.5", "--starts", "8", "--seed", "5", "--out", dir / "o2.json"}) ==
        0);
  CHECK(slurp(dir / "o1.json") == slurp(dir / "o2.json"));
}

TEST_CASE("saturator and verification") {
  TempDir dir;
  const auto sys = dir / "ml.json";
  CHECK(run_cli({"make-saturator", "--kind", "ml", "--delta", "0.5", "--gap", "2", "--dim", "3", "--out", sys}) == 0);
  const auto described = read_system(sys);
  CHECK(described.hamiltonian.dim() == 3);
  REQUIRE(described.predicted_time);

  const auto report = dir / "report.json";
  CHECK(run_cli({"verify", "--system", sys, "--out", report}) == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["all_satisfied"].get<bool>());
  bool ml_saturated = false;
  bool mt_saturated = true;
  for (const auto& b : j["bounds"]) {
    if (b["name"] == "ml") ml_saturated = b["saturated"].get<bool>();
    if (b["name"] == "mt") mt_saturated = b["saturated"].get<bool>();
  }
  CHECK(ml_saturated);
  CHECK_FALSE(mt_saturated);
  CHECK(std::abs(j["time"].get<double>() - *described.predicted_time) < 1e-6);
}

TEST_CASE("geometry check") {
  TempDir dir;
  const auto sys = dir / "ml.json";
  CHECK(run_cli({"make-saturator", "--kind", "ml", "--delta", "0.3", "--out", sys}) == 0);
  const auto described = read_system(sys);
  const auto report = dir / "geo.json";
  const auto curve = dir / "curve.csv";
  CHECK(run_cli({"geometry-check", "--system", sys, "--sigma-level", "0", "--tau",
                 std::to_string(*described.predicted_time), "--out", report, "--curve-csv", curve}) == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["ok"].get<bool>());
  CHECK(j["dynamical_phase_ok"].get<bool>());
  CHECK(j["area_ok"].get<bool>());
  CHECK(slurp(curve).rfind("t,re0,im0,re1,im1\n", 0) == 0);
}

TEST_CASE("extremal table") {
  TempDir dir;
  const auto out = dir / "ext.csv";
  CHECK(run_cli({"extremal", "--delta", "0.5", "--r-grid", "101", "--out", out}) == 0);
  std::stringstream ss(slurp(out));
  std::string line;
  std::getline(ss, line);
  CHECK(line == "r,extreme_value,running_min");
  double prev = 1e300;
  while (std::getline(ss, line)) {
    const auto cells = split(line);
    REQUIRE(cells.size() == 3);
    CHECK(std::stod(cells[2]) <= prev);
    prev = std::stod(cells[2]);
  }
  CHECK(prev >= 0.416252936011892 - 1e-12);
  CHECK(prev < 0.4165);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}) == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}) == cli::kExitUsage);
  CHECK(run_cli({"alpha-table", "--bogus"}) == cli::kExitUsage);
  CHECK(run_cli({"make-saturator", "--kind", "weird"}) == cli::kExitUsage);
  CHECK(run_cli({"verify", "--system", "/nonexistent.json"}) == cli::kExitUsage);
  CHECK(run_cli({"alpha-table", "--points", "1"}) == cli::kExitUsage);
}

TEST_CASE("verification failures use their own exit code") {
  TempDir dir;
  const auto sys = dir / "ml.json";
  CHECK(run_cli({"make-saturator", "--kind", "ml", "--delta", "0.3", "--out", sys}) == 0);
  // Too few time steps for the phase quadrature to meet its tolerance.
  CHECK(run_cli({"geometry-check", "--system", sys, "--tau", "2", "--steps", "20", "--out", dir / "geo.json"}) ==
        cli::kExitFailure);
  const auto j = nlohmann::json::parse(slurp(dir / "geo.json"));
  CHECK_FALSE(j["ok"].get<bool>());
}
