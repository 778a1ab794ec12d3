#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qsl/bounds.hpp"
#include "qsl/core_quantum.hpp"

using namespace qsl;

namespace {

const EnergyStats kUnit{1.0, 1.0, 1.0, 1.0};

}  // namespace

TEST_CASE("beta constant") {
  const auto b = beta();
  CHECK(std::abs(std::cos(b.x0) + b.x0 * std::sin(b.x0) - 1.0) < 1e-12);
  CHECK(std::abs(std::sin(b.x0) - b.beta) < 1e-12);
  // Quoted to three digits as 0.724; the tangency root is 0.72461...
  CHECK(std::floor(b.beta * 1000.0) / 1000.0 == doctest::Approx(0.724).epsilon(1e-12));
  CHECK(std::abs(b.x0 - oracle::kX0) < 1e-10);
  CHECK(std::abs(b.beta - oracle::kBeta) < 1e-10);
  CHECK(b.x0 > kPi / 2.0);
  CHECK(b.x0 < kPi);
}

TEST_CASE("the tangent line stays below cos") {
  const double b = beta().beta;
  for (int k = 0; k <= 1000; ++k) {
    const double x = kPi * k / 1000.0;
    CHECK(1.0 - b * x <= std::cos(x) + 1e-12);
  }
}

TEST_CASE("bounds at zero fidelity") {
  const auto r = bound_report(0.0, kUnit);
  CHECK(std::abs(r.tau_mt - kPi / 2.0) < 1e-12);
  CHECK(std::abs(r.tau_ml - kPi / 2.0) < 1e-10);
  CHECK(std::abs(r.tau3 - kPi / 2.0) < 1e-12);
  CHECK(std::abs(r.tau1 - 1.0 / oracle::kBeta) < 1e-10);
  CHECK(std::abs(r.tau2 - 1.0 / oracle::kBeta) < 1e-10);
  CHECK(std::abs(r.tau1 - 1.381) < 1e-3);
}

TEST_CASE("bounds scale with the energy statistics") {
  const EnergyStats s{3.0, 0.25, 2.0, 4.0};
  const auto r = bound_report(0.3, s);
  const auto u = bound_report(0.3, kUnit);
  CHECK(std::abs(r.tau_mt - u.tau_mt / 0.5) < 1e-12);
  CHECK(std::abs(r.tau_ml - u.tau_ml / 2.0) < 1e-12);
  CHECK(std::abs(r.tau_ml_dual - u.tau_ml / 4.0) < 1e-12);
  CHECK(std::abs(r.tau_max - std::max(r.tau_mt, r.tau_ml)) == 0.0);
  CHECK(std::abs(r.tau1 - u.tau1 / 2.0) < 1e-12);
  CHECK(r.variance == 0.25);
  CHECK(r.normalized_mean == 2.0);
  CHECK(r.dual_mean == 4.0);
}

TEST_CASE("bound ordering on a grid") {
  for (int k = 0; k <= 1000; ++k) {
    const auto r = bound_report(k / 1000.0, kUnit);
    const double slack = 1e-12;
    CHECK(r.tau_ml >= r.tau1 - slack);
    CHECK(r.tau_ml >= r.tau2 - slack);
    CHECK(r.tau_ml >= r.tau3 - slack);
    CHECK(r.tau1 >= r.tau2 - slack);
    CHECK(r.tau3 >= r.tau2 - slack);
    CHECK(r.tau_max == std::max(r.tau_mt, r.tau_ml));
  }
}

TEST_CASE("tau1 and tau3 cross once") {
  int changes = 0;
  int prev = 0;
  for (int k = 1; k < 1000; ++k) {
    const auto r = bound_report(k / 1000.0, kUnit);
    const int s = r.tau1 > r.tau3 ? 1 : -1;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  CHECK(changes == 1);
  const double c = tau1_tau3_crossing();
  CHECK(c > 0.25);
  CHECK(c < 0.35);
  const auto at = bound_report(c, kUnit);
  CHECK(std::abs(at.tau1 - at.tau3) < 1e-9);
}

TEST_CASE("bounds ignore a constant energy shift") {
  const EnergyStats a{0.7, 0.3, 0.7, 1.1};
  const EnergyStats b{5.7, 0.3, 0.7, 1.1};
  const auto ra = bound_report(0.4, a);
  const auto rb = bound_report(0.4, b);
  CHECK(ra.tau_mt == rb.tau_mt);
  CHECK(ra.tau_ml == rb.tau_ml);
  CHECK(ra.tau_ml_dual == rb.tau_ml_dual);
  CHECK(ra.tau3 == rb.tau3);
}

TEST_CASE("stationary statistics are rejected") {
  CHECK_THROWS_AS(bound_report(0.5, EnergyStats{1.0, 0.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(bound_report(0.5, EnergyStats{1.0, 1.0, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(bound_report(0.5, EnergyStats{1.0, 1.0, 1.0, 0.0}), Error);
  try {
    bound_report(0.5, EnergyStats{1.0, 0.0, 1.0, 1.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StationaryState);
  }
}

TEST_CASE("bounds vanish at unit fidelity") {
  const auto r = bound_report(1.0, kUnit);
  CHECK(r.tau_mt == 0.0);
  CHECK(r.tau_ml == 0.0);
  CHECK(std::abs(r.tau1) < 1e-15);
  CHECK(r.tau3 == 0.0);
}
