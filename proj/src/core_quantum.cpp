#include "qsl/core_quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OutsideFeasibleInterval: return "OutsideFeasibleInterval";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::StationaryState: return "StationaryState";
    case ErrorCode::NotEffectiveQubit: return "NotEffectiveQubit";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::OutsideOmega: return "OutsideOmega";
    case ErrorCode::DegenerateGeodesic: return "DegenerateGeodesic";
    case ErrorCode::NotOnGeodesicSphere: return "NotOnGeodesicSphere";
    case ErrorCode::InfeasibleRadius: return "InfeasibleRadius";
    case ErrorCode::InfeasibleSearch: return "InfeasibleSearch";
    case ErrorCode::NotOnM: return "NotOnM";
    case ErrorCode::InvalidVariation: return "InvalidVariation";
    case ErrorCode::UnderResolved: return "UnderResolved";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* where) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(where) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

// ---------------------------------------------------------------------------
// StateVector

StateVector StateVector::from_amplitudes(const CVector& amplitudes) {
  if (amplitudes.size() < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "state dimension must be at least 2");
  }
  const double norm = amplitudes.norm();
  if (!std::isfinite(norm) || norm == 0.0) {
    throw Error(ErrorCode::InvalidState, "cannot normalize a zero or non-finite vector");
  }
  return StateVector(amplitudes / norm);
}

StateVector make_state(std::span<const Complex> amplitudes) {
  CVector v(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t i = 0; i < amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = amplitudes[i];
  return StateVector::from_amplitudes(v);
}

StateVector make_state(const CVector& amplitudes) { return StateVector::from_amplitudes(amplitudes); }

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(const StateVector& psi) : projector_(psi.projector()), representative_(psi) {}

PureState PureState::from_projector(const CMatrix& p) {
  if (p.rows() != p.cols()) throw Error(ErrorCode::InvalidState, "projector must be square");
  if (p.rows() < 2) throw Error(ErrorCode::DimensionTooSmall, "projector dimension must be at least 2");
  if ((p - p.adjoint()).norm() > 1e-12) throw Error(ErrorCode::InvalidState, "projector is not Hermitian");
  if (std::abs(p.trace() - Complex(1.0)) > 1e-12) throw Error(ErrorCode::InvalidState, "projector trace is not 1");
  if ((p * p - p).norm() > 1e-10) throw Error(ErrorCode::InvalidState, "projector is not idempotent");
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < p.cols(); ++k) {
    if (p(k, k).real() > p(best, best).real()) best = k;
  }
  // Column `best` of |v><v| is v * conj(v_best): a representative up to phase.
  return PureState(p, StateVector::from_amplitudes(p.col(best)));
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw Error(ErrorCode::InvalidArgument, "Hamiltonian must be square");
  if (matrix.rows() < 2) throw Error(ErrorCode::DimensionTooSmall, "Hamiltonian dimension must be at least 2");
  const double scale = std::max(1.0, matrix.norm());
  if ((matrix - matrix.adjoint()).norm() > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument, "Hamiltonian is not Hermitian");
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  matrix_ = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "eigensolver failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> eigenvalues) {
  RVector vals(static_cast<Eigen::Index>(eigenvalues.size()));
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) vals(static_cast<Eigen::Index>(i)) = eigenvalues[i];
  return from_spectrum(vals, CMatrix::Identity(vals.size(), vals.size()));
}

HermitianOperator HermitianOperator::from_spectrum(const RVector& eigenvalues, const CMatrix& eigenvectors) {
  const Eigen::Index n = eigenvalues.size();
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "Hamiltonian dimension must be at least 2");
  if (eigenvectors.rows() != n || eigenvectors.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvector matrix shape does not match spectrum");
  }
  if ((eigenvectors.adjoint() * eigenvectors - CMatrix::Identity(n, n)).norm() > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "eigenvectors are not orthonormal");
  }
  // Sort ascending, carrying the columns along.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return eigenvalues(a) < eigenvalues(b); });
  RVector vals(n);
  CMatrix vecs(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    vals(i) = eigenvalues(order[static_cast<std::size_t>(i)]);
    vecs.col(i) = eigenvectors.col(order[static_cast<std::size_t>(i)]);
  }
  CMatrix m = vecs * vals.cast<Complex>().asDiagonal() * vecs.adjoint();
  m = 0.5 * (m + m.adjoint());
  return HermitianOperator(std::move(m), std::move(vals), std::move(vecs));
}

StateVector HermitianOperator::eigenstate(Eigen::Index k) const {
  if (k < 0 || k >= dim()) throw Error(ErrorCode::InvalidArgument, "eigenstate index out of range");
  return StateVector::from_amplitudes(eigenvectors_.col(k));
}

double HermitianOperator::min_nonzero_gap(double tol) const {
  double gap = 0.0;
  for (Eigen::Index i = 1; i < eigenvalues_.size(); ++i) {
    const double d = eigenvalues_(i) - eigenvalues_(i - 1);
    if (d > tol && (gap == 0.0 || d < gap)) gap = d;
  }
  return gap;
}

CMatrix HermitianOperator::propagator(double t) const {
  CVector phases(eigenvalues_.size());
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) phases(k) = std::exp(-kI * (t * eigenvalues_(k)));
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

HermitianOperator HermitianOperator::shifted(double c) const {
  RVector vals = eigenvalues_.array() + c;
  CMatrix m = matrix_ + c * CMatrix::Identity(dim(), dim());
  return HermitianOperator(std::move(m), std::move(vals), eigenvectors_);
}

HermitianOperator HermitianOperator::scaled(double c) const {
  RVector vals = eigenvalues_ * c;
  CMatrix vecs = eigenvectors_;
  if (c < 0.0) {
    vals.reverseInPlace();
    vecs = vecs.rowwise().reverse().eval();
  }
  return HermitianOperator(matrix_ * c, std::move(vals), std::move(vecs));
}

// ---------------------------------------------------------------------------
// Free functions

double EnergyStats::uncertainty() const { return std::sqrt(std::max(0.0, variance)); }

double fidelity(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim(), "fidelity");
  const double f = (a.projector() * b.projector()).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "fidelity");
  return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), 0.0, 1.0);
}

StateVector evolve(const HermitianOperator& h, const StateVector& psi, double t) {
  require_same_dim(h.dim(), psi.dim(), "evolve");
  const CMatrix& v = h.eigenvectors();
  CVector c = v.adjoint() * psi.amplitudes();
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(-kI * (t * h.eigenvalues()(k)));
  return StateVector::from_amplitudes(v * c);
}

EnergyStats energy_stats(const HermitianOperator& h, const StateVector& psi) {
  require_same_dim(h.dim(), psi.dim(), "energy_stats");
  // Work in the eigenbasis: occupation-weighted moments are exactly real.
  const CVector c = h.eigenvectors().adjoint() * psi.amplitudes();
  double mean = 0.0;
  double total = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double w = std::norm(c(k));
    total += w;
    mean += w * h.eigenvalues()(k);
  }
  mean /= total;
  double variance = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double d = h.eigenvalues()(k) - mean;
    variance += std::norm(c(k)) * d * d;
  }
  variance /= total;
  EnergyStats s;
  s.mean = mean;
  s.variance = variance;
  s.normalized_mean = std::max(0.0, mean - h.min_eigenvalue());
  s.dual_mean = std::max(0.0, h.max_eigenvalue() - mean);
  return s;
}

double projector_distance(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "projector_distance");
  return (a.projector() - b.projector()).norm();
}

}  // namespace qsl
