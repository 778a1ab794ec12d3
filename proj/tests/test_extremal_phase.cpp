#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsl/alpha.hpp"
#include "qsl/extremal_phase.hpp"
#include "qsl/random.hpp"

using namespace qsl;

namespace {

StateVector basis(Eigen::Index n, Eigen::Index k) {
  CVector v = CVector::Zero(n);
  v(k) = 1.0;
  return make_state(v);
}

ExtremalCurveSpec qubit_spec(double r, double total, int samples, double duration = 1.0) {
  return {PureState(basis(2, 0)), r, basis(2, 1), linear_profile(total, samples), duration};
}

ExtremalCurveSpec random_spec(Rng& rng, int samples) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto phi = haar_state(3, rng);
  CVector w = haar_state(3, rng).amplitudes();
  w -= phi.amplitudes() * phi.amplitudes().dot(w);
  return {PureState(phi), 0.2 + 1.1 * u(rng), make_state(w), linear_profile(0.5 + 4.0 * u(rng), samples),
          1.0 + u(rng)};
}

}  // namespace

TEST_CASE("curve description validation") {
  CHECK_THROWS_AS(validate(qubit_spec(0.0, 1.0, 11)), Error);
  CHECK_THROWS_AS(validate(qubit_spec(kPi / 2.0, 1.0, 11)), Error);
  auto bad = qubit_spec(0.5, 1.0, 11);
  bad.w = make_state(CVector::Ones(2));
  CHECK_THROWS_AS(validate(bad), Error);
  auto shifted = qubit_spec(0.5, 1.0, 11);
  shifted.phase_profile[0] = 0.1;
  CHECK_THROWS_AS(validate(shifted), Error);
  CHECK_NOTHROW(validate(qubit_spec(0.5, 1.0, 11)));
}

TEST_CASE("extremal curves stay on the geodesic sphere") {
  Rng rng(81);
  for (int k = 0; k < 5; ++k) {
    auto spec = random_spec(rng, 401);
    for (std::size_t i = 1; i < spec.phase_profile.size(); ++i) spec.phase_profile[i] += 0.3 * std::sin(0.02 * i);
    const auto curve = extremal_curve(spec, 401);
    for (const auto& s : curve.samples()) {
      CHECK(std::abs(fs_distance(spec.sigma.representative(), s) - spec.r) < 1e-10);
    }
  }
}

TEST_CASE("constant profiles give constant curves") {
  const auto spec = qubit_spec(0.7, 0.0, 51);
  const auto curve = extremal_curve(spec, 51);
  for (const auto& s : curve.samples()) CHECK(projector_distance(s, curve.front()) < 1e-15);
  CHECK(std::abs(functional_J(curve, spec.sigma)) < 1e-15);
}

TEST_CASE("linear profiles are effective-qubit evolutions") {
  const std::vector<double> e{0.0, 1.3};
  const auto h = HermitianOperator::diagonal(e);
  const double r = 0.6;
  const double tau = 2.0;
  CVector v(2);
  v << std::cos(r), std::sin(r);
  const auto psi = make_state(v);
  const auto spec = qubit_spec(r, 1.3 * tau, 201, tau);
  const auto curve = extremal_curve(spec, 201);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(projector_distance(curve[i], evolve(h, psi, curve.step() * static_cast<double>(i))) < 1e-12);
  }
}

TEST_CASE("functional values of extremal curves") {
  const auto quarter = extremal_curve(qubit_spec(kPi / 4.0, 1.0, 2001), 2001);
  CHECK(std::abs(functional_J(quarter, PureState(basis(2, 0))) - 0.5) < 1e-6);
  Rng rng(82);
  for (int k = 0; k < 5; ++k) {
    const auto spec = random_spec(rng, 2001);
    const auto curve = extremal_curve(spec, 2001);
    const double j = functional_J(curve, spec.sigma);
    CHECK(std::abs(j - std::pow(std::sin(spec.r), 2) * spec.phase_profile.back()) < 1e-6);
    CHECK(std::abs(functional_J(reverse(curve), spec.sigma) + j) < 1e-9);
  }
}

TEST_CASE("extreme values") {
  const auto v = extreme_value(kPi / 4.0, 0.0);
  CHECK(std::abs(v.first - kPi / 2.0) < 1e-12);
  CHECK(std::abs(v.second + kPi / 2.0) < 1e-12);
  for (double r : {0.3, 0.7, 1.2}) {
    const auto one = extreme_value(r, 1.0);
    CHECK(one.first == 0.0);
    CHECK(one.second == 0.0);
  }
  CHECK_THROWS_AS(extreme_value(0.1, 0.5), Error);
  CHECK_THROWS_AS(extreme_value(1.5, 0.5), Error);
}

TEST_CASE("extreme values stay within pi on feasible radii") {
  for (int k = 0; k < 100; ++k) {
    const double d = k / 100.0;
    const double lo = r_lower(d);
    const double hi = r_upper(d);
    for (int i = 0; i <= 200; ++i) {
      const auto v = extreme_value(lo + (hi - lo) * i / 200.0, d);
      CHECK(v.first >= 0.0);
      CHECK(v.first <= kPi);
      CHECK(v.second == -v.first);
    }
  }
}

TEST_CASE("the smallest positive extreme value is alpha") {
  for (int k = 0; k < 10; ++k) {
    const double d = k / 10.0;
    const auto m = min_positive_extreme_value(d);
    CHECK(std::abs(m.value - alpha(d).value) < 1e-8);
    CHECK(std::abs(m.r - alpha_via_r(d).r_star) < 1e-4);
  }
}

TEST_CASE("extremal curves are stationary") {
  Rng rng(83);
  for (int k = 0; k < 3; ++k) {
    const auto spec = random_spec(rng, 2001);
    const auto rep = stationarity_test(spec, 2001, 4, 1e-3, 100 + static_cast<std::uint64_t>(k));
    CHECK(rep.first_order < 1e-4);
    CHECK(rep.first_order_half < 1e-4);
    CHECK(rep.gauge_change < 1e-12);
  }
}

TEST_CASE("deformed curves are not stationary") {
  Rng rng(84);
  const auto spec = random_spec(rng, 2001);
  CVector eta = haar_state(3, rng).amplitudes();
  const CVector& phi = spec.sigma.representative().amplitudes();
  eta -= phi * phi.dot(eta);
  const Variation kink{eta, bump_profile(2001, 1), false};
  const auto rep = stationarity_test(spec, 2001, 4, 1e-3, 7, &kink, 0.5);
  CHECK(rep.first_order > 1e-2);
}

TEST_CASE("variations that move the endpoints are rejected") {
  const auto spec = qubit_spec(0.5, 1.0, 101);
  std::vector<double> ramp(101);
  for (int i = 0; i < 101; ++i) ramp[static_cast<std::size_t>(i)] = i / 100.0;
  CVector along = spec.w.amplitudes();
  CHECK_THROWS_AS(varied_curve(spec, 101, Variation{along, ramp, false}, 0.1), Error);
  CHECK_THROWS_AS(varied_curve(spec, 101, Variation{along, bump_profile(51, 1), false}, 0.1), Error);
  const CVector radial = spec.sigma.representative().amplitudes();
  CHECK_THROWS_AS(varied_curve(spec, 101, Variation{radial, bump_profile(101, 1), false}, 0.1), Error);
  CHECK_NOTHROW(varied_curve(spec, 101, Variation{along, bump_profile(101, 2), false}, 0.1));
}

TEST_CASE("gauge rotations leave the functional unchanged") {
  Rng rng(85);
  const auto spec = random_spec(rng, 1001);
  const double j = functional_J(extremal_curve(spec, 1001), spec.sigma);
  for (double h : {0.3, 1.0, 2.5}) {
    const auto rotated = varied_curve(spec, 1001, Variation{CVector(), {}, true}, h);
    CHECK(std::abs(functional_J(rotated, spec.sigma) - j) < 1e-12);
  }
}
