#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qsl/alpha.hpp"
#include "qsl/core_quantum.hpp"

using namespace qsl;

TEST_CASE("qubit action at special heights") {
  CHECK(std::abs(objective_z(0.0, 0.0) - kPi / 2.0) < 1e-15);
  for (double d : {0.04, 0.25, 0.6, 0.81}) {
    CHECK(std::abs(objective_z(d, std::sqrt(d)) - (1.0 + std::sqrt(d)) * kPi / 2.0) < 1e-9);
  }
  CHECK(std::abs(objective_z(0.25, 0.0) - kPi / 3.0) < 1e-14);
  CHECK(std::abs(objective_z(0.25, 0.0) - std::acos(-0.5) / 2.0) < 1e-14);
}

TEST_CASE("qubit action matches the reference formula") {
  for (double d : {0.1, 0.5, 0.9}) {
    for (double u : {-0.9, -0.4, 0.0, 0.3, 0.95}) {
      const double z = u * std::sqrt(d);
      CHECK(std::abs(objective_z(d, z) - oracle::qubit_action(d, z)) < 1e-13);
    }
  }
}

TEST_CASE("qubit action domain errors") {
  CHECK_THROWS_AS(objective_z(0.25, 0.6), Error);
  CHECK_THROWS_AS(objective_z(1.0, 1.0), Error);
  CHECK_THROWS_AS(alpha(0.5, 0.0), Error);
  CHECK_THROWS_AS(alpha(-0.1), Error);
  CHECK_THROWS_AS(alpha(1.1), Error);
}

TEST_CASE("alpha at the endpoints") {
  const auto a0 = alpha(0.0);
  CHECK(std::abs(a0.value - kPi / 2.0) < 1e-10);
  CHECK(std::abs(a0.z_star) < 1e-9);
  CHECK(alpha(1.0).value == 0.0);
  const auto r0 = alpha_via_r(0.0);
  CHECK(std::abs(r0.value - kPi / 2.0) < 1e-10);
  CHECK(std::abs(r0.r_star - kPi / 4.0) < 1e-9);
  CHECK(alpha_via_r(1.0).value == 0.0);
}

TEST_CASE("alpha agrees with frozen dense-scan values") {
  const auto a = alpha(0.5);
  CHECK(std::abs(a.value - oracle::kAlpha05) < 1e-9);
  CHECK(std::abs(a.z_star - oracle::kZStar05) < 1e-6);
  CHECK(std::abs(alpha(0.25).value - oracle::kAlpha025) < 1e-9);
  CHECK(std::abs(alpha(0.25).z_star - oracle::kZStar025) < 1e-5);
  CHECK(std::abs(alpha(0.1).value - oracle::kAlpha01) < 1e-9);
  CHECK(std::abs(alpha(0.9).value - oracle::kAlpha09) < 1e-9);
  CHECK(std::abs(alpha(0.99).value - oracle::kAlpha099) < 1e-9);
}

TEST_CASE("alpha agrees with a brute-force scan") {
  for (double d : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    const auto ref = oracle::alpha_scan(d);
    const auto a = alpha(d);
    CHECK(a.value <= ref.value + 1e-12);
    CHECK(std::abs(a.value - ref.value) < 1e-7);
    CHECK(std::abs(a.z_star - ref.x) < 1e-3);
  }
}

TEST_CASE("both parametrizations agree") {
  for (int k = 0; k <= 100; ++k) {
    const double d = k / 100.0;
    const auto a = alpha(d);
    const auto b = alpha_via_r(d);
    CHECK(std::abs(a.value - b.value) < 1e-8);
    CHECK(std::abs(a.z_star + std::cos(2.0 * a.r_star)) < 1e-9);
    CHECK(std::abs(b.z_star + std::cos(2.0 * b.r_star)) < 1e-9);
  }
}

TEST_CASE("alpha result invariants on a grid") {
  double prev = 10.0;
  for (int k = 0; k <= 1000; ++k) {
    const double d = k / 1000.0;
    const auto a = alpha(d);
    CHECK(a.value >= 0.0);
    CHECK(a.value <= kPi / 2.0 + 1e-12);
    CHECK(a.value < prev);
    prev = a.value;
    if (k < 1000) {
      CHECK(a.z_star * a.z_star <= d + 1e-12);
      CHECK(std::abs(a.value - objective_z(d, a.z_star)) < 1e-9);
      if (k > 0) CHECK(a.z_star < 0.0);
    }
  }
}

TEST_CASE("alpha lies strictly below arccos sqrt(delta)") {
  for (int k = 10; k <= 990; ++k) {
    const double d = k / 1000.0;
    CHECK(alpha(d).value < std::acos(std::sqrt(d)) - 1e-6);
  }
}

TEST_CASE("the qubit action has a single interior minimum") {
  for (double d : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    const double s = std::sqrt(d);
    const int minima = count_local_minima([d](double z) { return objective_z(d, z); }, -s, s, 4001, 1e-14);
    CHECK(minima == 1);
  }
}

TEST_CASE("golden section on a parabola") {
  const auto m = scan_and_golden([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, -1.0, 2.0, 101, 1e-12);
  CHECK(std::abs(m.x - 0.3) < 1e-7);
  CHECK(std::abs(m.value - 1.0) < 1e-13);
}
