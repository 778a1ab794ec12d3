#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qsl/alpha.hpp"
#include "qsl/first_passage.hpp"
#include "qsl/oracle.hpp"
#include "qsl/random.hpp"

using namespace qsl;

namespace {

SpectralPoint qubit_point(double delta) {
  const auto a = alpha(delta);
  const double z = a.z_star;
  const double x = std::acos(std::clamp((2.0 * delta - 1.0 - z * z) / (1.0 - z * z), -1.0, 1.0));
  return {{0.5 * (1.0 - z), 0.5 * (1.0 + z)}, {0.0, x}};
}

}  // namespace

TEST_CASE("spectral functions") {
  const SpectralPoint half{{0.5, 0.5}, {kPi, 0.0}};
  CHECK(std::abs(objective_f(half) - kPi / 2.0) < 1e-15);
  CHECK(std::abs(constraint_g(half)) < 1e-15);
  CHECK(std::abs(constraint_h(half) - 1.0) < 1e-15);
  CHECK(std::abs(constraint_g1(half)) < 1e-15);
  CHECK(std::abs(constraint_g2(half)) < 1e-15);

  const SpectralPoint pure{{1.0, 0.0, 0.0}, {0.7, 2.0, 5.0}};
  CHECK(std::abs(constraint_g(pure) - 1.0) < 1e-15);
  CHECK(std::abs(constraint_h(pure) - 1.0) < 1e-15);

  const std::vector<double> e{0.0, 1.0};
  const auto h = HermitianOperator::diagonal(e);
  const auto psi = make_state(CVector::Ones(2));
  for (double x : {0.3, 1.2, 2.9, 4.4}) {
    const SpectralPoint pt{{0.5, 0.5}, {x, 0.0}};
    CHECK(std::abs(constraint_g(pt) - 0.5 * (1.0 + std::cos(x))) < 1e-14);
    CHECK(std::abs(constraint_g(pt) - fidelity_at(h, psi, x)) < 1e-14);
  }
  CHECK_THROWS_AS(objective_f(SpectralPoint{{0.5, 0.5}, {1.0}}), Error);
  CHECK_THROWS_AS(constraint_g(SpectralPoint{{}, {}}), Error);
}

TEST_CASE("spectral functions are permutation invariant") {
  Rng rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    SpectralPoint pt;
    for (int j = 0; j < 5; ++j) {
      pt.p.push_back(u(rng));
      pt.eps.push_back(2.0 * kPi * u(rng));
    }
    SpectralPoint q = pt;
    std::vector<int> perm{3, 0, 4, 1, 2};
    for (int j = 0; j < 5; ++j) {
      q.p[static_cast<std::size_t>(j)] = pt.p[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
      q.eps[static_cast<std::size_t>(j)] = pt.eps[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
    }
    CHECK(std::abs(objective_f(pt) - objective_f(q)) < 1e-13);
    CHECK(std::abs(constraint_g(pt) - constraint_g(q)) < 1e-13);
    CHECK(std::abs(constraint_h(pt) - constraint_h(q)) < 1e-13);
  }
}

TEST_CASE("admissible pair reduction") {
  Rng rng(72);
  for (int k = 0; k < 30; ++k) {
    const auto h = random_hamiltonian(4, -2.0, 6.0, rng);
    const auto psi = haar_state(4, rng);
    const double tau = 0.2 + 0.3 * k;
    const auto pair = reduce_triple(h, psi, tau);
    const auto& hp = pair.hamiltonian;
    CHECK(std::abs(hp.min_eigenvalue()) < 1e-12);
    CHECK(hp.max_eigenvalue() <= 2.0 * kPi + 1e-12);
    CHECK(std::abs(fidelity_at(hp, pair.state, 1.0) - fidelity_at(h, psi, tau)) < 1e-10);
    const auto sh = energy_stats(h, psi);
    CHECK(energy_stats(hp, pair.state).mean <= tau * sh.normalized_mean + 1e-10);

    const auto shifted = reduce_triple(h.shifted(3.3), psi, tau);
    CHECK((shifted.hamiltonian.eigenvalues() - hp.eigenvalues()).norm() < 1e-9);

    const auto pt = spectral_point(pair);
    CHECK(std::abs(constraint_h(pt) - 1.0) < 1e-12);
    CHECK(std::abs(constraint_g(pt) - fidelity_at(h, psi, tau)) < 1e-10);
    CHECK(std::abs(objective_f(pt) - energy_stats(hp, pair.state).mean) < 1e-10);
  }
  CHECK_THROWS_AS(reduce_triple(random_hamiltonian(2, 0.0, 1.0, rng), haar_state(2, rng), 0.0), Error);
}

TEST_CASE("reduction without and with folding") {
  const std::vector<double> e{0.0, 1.5};
  const auto h = HermitianOperator::diagonal(e);
  const auto psi = make_state(CVector::Ones(2));
  const double tau = 2.0;
  CHECK(std::abs(energy_stats(reduce_triple(h, psi, tau).hamiltonian, psi).mean -
                 tau * energy_stats(h, psi).normalized_mean) < 1e-12);

  const std::vector<double> big{0.0, 3.0 * kPi};
  const auto hb = HermitianOperator::diagonal(big);
  const auto pair = reduce_triple(hb, psi, 1.0);
  CHECK(std::abs(pair.hamiltonian.max_eigenvalue() - kPi) < 1e-12);
  CHECK(energy_stats(pair.hamiltonian, psi).mean < energy_stats(hb, psi).mean - 1.0);
}

TEST_CASE("stationarity of the qubit structure point") {
  for (double d : {0.1, 0.25, 0.5, 0.75}) {
    const auto pt = qubit_point(d);
    CHECK(std::abs(constraint_g(pt) - d) < 1e-9);
    CHECK(std::abs(objective_f(pt) - alpha(d).value) < 1e-9);
    const auto rep = check_stationarity(pt, d);
    CHECK(rep.residual < 1e-6);
    CHECK(quadratic_relation_residual(pt, d, rep) < 1e-4);
  }
}

TEST_CASE("generic feasible points are not stationary") {
  Rng rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  for (int k = 0; k < 10; ++k) {
    SpectralPoint seed;
    for (int j = 0; j < 4; ++j) {
      seed.p.push_back(0.1 + 0.8 * u(rng));
      seed.eps.push_back(0.5 + 5.0 * u(rng));
    }
    SpectralPoint pt;
    try {
      pt = restore_feasibility(seed, 0.4);
    } catch (const Error&) {
      continue;
    }
    ++tested;
    CHECK(std::abs(constraint_g(pt) - 0.4) < 1e-9);
    CHECK(std::abs(constraint_h(pt) - 1.0) < 1e-9);
    CHECK(check_stationarity(pt, 0.4).residual > 1e-2);
  }
  CHECK(tested >= 5);
}

TEST_CASE("infeasible points are rejected") {
  CHECK_THROWS_AS(check_stationarity(SpectralPoint{{0.5, 0.5}, {1.0, 0.0}}, 0.2), Error);
  CHECK_THROWS_AS(check_stationarity(SpectralPoint{{0.7, 0.7}, {kPi, 0.0}}, 0.0), Error);
}

TEST_CASE("zero-fidelity qubit minimum") {
  const auto res = minimize_over_M(2, 0.0);
  CHECK(std::abs(res.min_value - kPi / 2.0) < 1e-6);
  const auto c = canonical(res.argmin);
  CHECK(std::abs(c.p[0] - 0.5) < 1e-4);
  CHECK(std::abs(c.p[1] - 0.5) < 1e-4);
  CHECK(std::abs(c.eps[0]) < 1e-4);
  CHECK(std::abs(c.eps[1] - kPi) < 1e-4);
}

TEST_CASE("the minimum does not depend on the dimension") {
  for (double d : {0.0, 0.25, 0.5, 0.75}) {
    const double target = alpha(d).value;
    for (int n : {2, 3, 4}) {
      OracleConfig cfg;
      cfg.starts = 32;
      const auto res = minimize_over_M(n, d, cfg);
      CHECK(std::abs(res.min_value - target) < 1e-3);
      CHECK(res.min_value >= 0.0);
      CHECK(res.min_value <= (1.0 + std::sqrt(d)) * kPi / 2.0 + 1e-9);
      CHECK(res.structure.ground_occupied);
      CHECK(res.structure.nonzero_eps_equal);
      CHECK(res.stationarity_residual < 1e-6);
      if (d > 0.0) {
        const StationarityReport rep{res.stationarity_residual, res.multipliers};
        CHECK(quadratic_relation_residual(res.argmin, d, rep) < 1e-4);
      }
    }
  }
}

TEST_CASE("oracle runs are reproducible") {
  OracleConfig cfg;
  cfg.starts = 16;
  cfg.seed = 99;
  const auto a = minimize_over_M(3, 0.4, cfg);
  const auto b = minimize_over_M(3, 0.4, cfg);
  CHECK(a.min_value == b.min_value);
  CHECK(a.argmin.p == b.argmin.p);
  CHECK(a.argmin.eps == b.argmin.eps);
}

TEST_CASE("oracle argument errors") {
  CHECK_THROWS_AS(minimize_over_M(1, 0.5), Error);
  CHECK_THROWS_AS(minimize_over_M(3, 1.0), Error);
  CHECK_THROWS_AS(minimize_over_M(3, -0.1), Error);
}
