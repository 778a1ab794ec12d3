#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qsl/errors.hpp"

namespace qsl {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Unit vector in C^n, n >= 2. The only way to build one is through the
/// normalizing factory, so every instance satisfies the norm invariant.
class StateVector {
 public:
  static StateVector from_amplitudes(const CVector& amplitudes);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

  /// Rank-1 projector |psi><psi|.
  CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  explicit StateVector(CVector v) : amplitudes_(std::move(v)) {}
  CVector amplitudes_;
};

StateVector make_state(std::span<const Complex> amplitudes);
StateVector make_state(const CVector& amplitudes);

/// Rank-1 orthogonal projector. Kept together with a representative unit
/// vector so lifts can be recovered without an eigensolve.
class PureState {
 public:
  explicit PureState(const StateVector& psi);

  /// Validates Hermiticity, unit trace and idempotence; recovers a
  /// representative vector from the largest column.
  static PureState from_projector(const CMatrix& projector);

  const CMatrix& projector() const noexcept { return projector_; }
  const StateVector& representative() const noexcept { return representative_; }
  Eigen::Index dim() const noexcept { return projector_.rows(); }

 private:
  PureState(CMatrix p, StateVector v) : projector_(std::move(p)), representative_(std::move(v)) {}
  CMatrix projector_;
  StateVector representative_;
};

/// Hermitian matrix together with its spectral decomposition (eigenvalues
/// ascending, orthonormal eigenvectors as columns).
class HermitianOperator {
 public:
  explicit HermitianOperator(const CMatrix& matrix);
  static HermitianOperator diagonal(std::span<const double> eigenvalues);
  static HermitianOperator from_spectrum(const RVector& eigenvalues, const CMatrix& eigenvectors);

  const CMatrix& matrix() const noexcept { return matrix_; }
  const RVector& eigenvalues() const noexcept { return eigenvalues_; }
  const CMatrix& eigenvectors() const noexcept { return eigenvectors_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

  double min_eigenvalue() const { return eigenvalues_(0); }
  double max_eigenvalue() const { return eigenvalues_(eigenvalues_.size() - 1); }
  StateVector eigenstate(Eigen::Index k) const;

  /// Smallest strictly positive gap between distinct eigenvalues, or 0 when
  /// the spectrum is a single point.
  double min_nonzero_gap(double tol = 1e-12) const;

  /// e^{-itH}, assembled from the spectral decomposition.
  CMatrix propagator(double t) const;

  HermitianOperator shifted(double c) const;
  HermitianOperator scaled(double c) const;

 private:
  HermitianOperator(CMatrix m, RVector vals, CMatrix vecs)
      : matrix_(std::move(m)), eigenvalues_(std::move(vals)), eigenvectors_(std::move(vecs)) {}
  CMatrix matrix_;
  RVector eigenvalues_;
  CMatrix eigenvectors_;
};

struct EnergyStats {
  double mean = 0.0;
  double variance = 0.0;
  double normalized_mean = 0.0;  // <H> - eps0
  double dual_mean = 0.0;        // eps_max - <H>

  double uncertainty() const;
};

double fidelity(const PureState& a, const PureState& b);
double fidelity(const StateVector& a, const StateVector& b);

StateVector evolve(const HermitianOperator& h, const StateVector& psi, double t);

EnergyStats energy_stats(const HermitianOperator& h, const StateVector& psi);

/// Frobenius distance between the projectors of two states; zero iff they
/// agree up to a global phase.
double projector_distance(const StateVector& a, const StateVector& b);

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* where);

}  // namespace qsl
