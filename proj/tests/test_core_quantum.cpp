#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsl/core_quantum.hpp"
#include "qsl/random.hpp"

using namespace qsl;

namespace {

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (auto x : xs) v(k++) = x;
  return v;
}

HermitianOperator diag(std::vector<double> e) { return HermitianOperator::diagonal(e); }

}  // namespace

TEST_CASE("states are normalized on construction") {
  const auto a = make_state(vec({1.0, 0.0}));
  CHECK(std::abs(a[0] - Complex(1.0)) < 1e-15);
  const auto b = make_state(vec({1.0, 1.0}));
  CHECK(std::abs(b[0].real() - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(b[1].real() - 1.0 / std::sqrt(2.0)) < 1e-15);
  const auto c = make_state(vec({Complex(0.0, 2.0), 0.0, 0.0}));
  CHECK(std::abs(c[0] - kI) < 1e-15);
  CHECK(c.dim() == 3);
}

TEST_CASE("invalid states are rejected") {
  CHECK_THROWS_AS(make_state(vec({0.0, 0.0})), Error);
  CHECK_THROWS_AS(make_state(vec({1.0})), Error);
  CHECK_THROWS_AS(make_state(vec({std::nan(""), 1.0})), Error);
}

TEST_CASE("random states have unit norm") {
  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto psi = haar_state(2 + k % 6, rng);
    CHECK(std::abs(psi.amplitudes().norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("fidelity basics") {
  const auto zero = make_state(vec({1.0, 0.0}));
  const auto one = make_state(vec({0.0, 1.0}));
  CHECK(fidelity(PureState(zero), PureState(zero)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity(PureState(zero), PureState(one)) == doctest::Approx(0.0));
  for (double theta : {0.3, 1.1, 2.5, kPi}) {
    const auto a = make_state(vec({1.0, 1.0}));
    const auto b = make_state(vec({1.0, std::exp(kI * theta)}));
    CHECK(std::abs(fidelity(a, b) - 0.5 * (1.0 + std::cos(theta))) < 1e-14);
  }
}

TEST_CASE("fidelity is symmetric, bounded and phase invariant") {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto a = haar_state(4, rng);
    const auto b = haar_state(4, rng);
    const double f = fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-14);
    CHECK(std::abs(f - fidelity(b, a)) < 1e-14);
    CHECK(std::abs(f - fidelity(make_state(CVector(std::exp(kI * 0.7) * a.amplitudes())), b)) < 1e-14);
  }
}

TEST_CASE("evolution of simple qubits") {
  const auto h = diag({0.0, 1.0});
  const auto ground = make_state(vec({1.0, 0.0}));
  CHECK(projector_distance(evolve(h, ground, 3.7), ground) < 1e-14);
  const auto plus = make_state(vec({1.0, 1.0}));
  CHECK(fidelity(evolve(h, plus, kPi), plus) < 1e-15);
  CHECK(std::abs(fidelity(evolve(h, plus, kPi / 2.0), plus) - 0.5) < 1e-14);
}

TEST_CASE("evolution composes and preserves the norm") {
  Rng rng(3);
  const auto h = random_hamiltonian(4, 0.0, 5.0, rng);
  const auto psi = haar_state(4, rng);
  const auto a = evolve(h, evolve(h, psi, 0.4), 0.9);
  const auto b = evolve(h, psi, 1.3);
  CHECK(projector_distance(a, b) < 1e-12);
  CHECK(std::abs(b.amplitudes().norm() - 1.0) < 1e-12);
}

TEST_CASE("energy statistics") {
  const auto s = energy_stats(diag({0.0, 1.0}), make_state(vec({1.0, 1.0})));
  CHECK(s.mean == doctest::Approx(0.5));
  CHECK(s.variance == doctest::Approx(0.25));
  CHECK(s.normalized_mean == doctest::Approx(0.5));
  CHECK(s.dual_mean == doctest::Approx(0.5));
  CHECK(s.uncertainty() == doctest::Approx(0.5));

  const auto q = energy_stats(diag({0.0, 1.0, 3.0}), make_state(vec({1.0, 1.0, 1.0})));
  CHECK(std::abs(q.mean - 4.0 / 3.0) < 1e-14);
  CHECK(std::abs(q.normalized_mean - 4.0 / 3.0) < 1e-14);
  CHECK(std::abs(q.dual_mean - 5.0 / 3.0) < 1e-14);
}

TEST_CASE("energy statistics are shift covariant") {
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    const auto h = random_hamiltonian(3, 0.0, 4.0, rng);
    const auto psi = haar_state(3, rng);
    const auto a = energy_stats(h, psi);
    const auto b = energy_stats(h.shifted(2.5), psi);
    CHECK(std::abs(b.mean - a.mean - 2.5) < 1e-12);
    CHECK(std::abs(b.variance - a.variance) < 1e-12);
    CHECK(std::abs(b.normalized_mean - a.normalized_mean) < 1e-12);
    CHECK(std::abs(b.dual_mean - a.dual_mean) < 1e-12);
    CHECK(a.normalized_mean >= -1e-12);
    CHECK(a.dual_mean >= -1e-12);
  }
}

TEST_CASE("spectral decomposition") {
  Rng rng(9);
  const auto h = random_hamiltonian(5, -1.0, 3.0, rng);
  const CMatrix& v = h.eigenvectors();
  const CMatrix rebuilt = v * h.eigenvalues().cast<Complex>().asDiagonal() * v.adjoint();
  CHECK((rebuilt - h.matrix()).norm() < 1e-12);
  for (Eigen::Index k = 1; k < h.dim(); ++k) CHECK(h.eigenvalues()(k) >= h.eigenvalues()(k - 1));
  CHECK((h.propagator(0.8) * h.propagator(0.8).adjoint() - CMatrix::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("non-Hermitian matrices are rejected") {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(HermitianOperator{m}, Error);
}

TEST_CASE("seed derivation is deterministic") {
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  Rng a(derive_seed(42, 0));
  Rng b(derive_seed(42, 0));
  CHECK(haar_state(3, a).amplitudes().isApprox(haar_state(3, b).amplitudes()));
}
