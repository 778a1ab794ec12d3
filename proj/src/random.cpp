#include "qsl/random.hpp"

namespace qsl {

namespace {

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

StateVector haar_state(Eigen::Index n, Rng& rng) {
  return StateVector::from_amplitudes(ginibre(n, 1, rng).col(0));
}

CMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(ginibre(n, n, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

HermitianOperator random_hamiltonian(Eigen::Index n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  RVector vals(n);
  for (Eigen::Index k = 0; k < n; ++k) vals(k) = uniform(rng);
  return HermitianOperator::from_spectrum(vals, haar_unitary(n, rng));
}

}  // namespace qsl
