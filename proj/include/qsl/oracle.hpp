#pragma once

#include <cstdint>
#include <vector>

#include "qsl/core_quantum.hpp"

namespace qsl {

/// Occupation probabilities p_j and phases eps_j = tau * (energy_j - eps0)
/// of a state in the eigenbasis of a normalized Hamiltonian.
struct SpectralPoint {
  std::vector<double> p;
  std::vector<double> eps;

  std::size_t size() const noexcept { return p.size(); }
};

/// f = sum p_j eps_j (the normalized action).
double objective_f(const SpectralPoint& pt);
/// g = |sum p_j e^{i eps_j}|^2 (the fidelity after unit time).
double constraint_g(const SpectralPoint& pt);
/// h = sum p_j.
double constraint_h(const SpectralPoint& pt);
/// Real and imaginary parts of sum p_j e^{i eps_j}.
double constraint_g1(const SpectralPoint& pt);
double constraint_g2(const SpectralPoint& pt);

/// Normalized form of (H, psi, tau): H' = V diag((lambda_k - lambda_0) tau mod 2 pi) V^dagger,
/// so H' has spectrum in [0, 2 pi), smallest eigenvalue 0, and e^{-iH'} acts
/// on psi like e^{-i tau H} up to a global phase.
struct AdmissiblePair {
  HermitianOperator hamiltonian;
  StateVector state;
};

AdmissiblePair reduce_triple(const HermitianOperator& h, const StateVector& psi, double tau);

/// Spectral coordinates of psi in the eigenbasis of an admissible Hamiltonian.
SpectralPoint spectral_point(const AdmissiblePair& pair);

struct OracleConfig {
  int starts = 48;
  std::uint64_t seed = 0x5eed;
  double tol = 1e-6;
  int max_iterations = 3000;
  double occupation_threshold = 1e-6;
  double phase_threshold = 1e-4;
  double spread_threshold = 1e-3;
};

struct MinimizerStructure {
  bool ground_occupied = false;
  bool nonzero_eps_equal = false;
  int n_distinct_nonzero = 0;
};

struct StationarityReport {
  double residual = 0.0;
  /// Multipliers in the convention grad f = sum_i m_i grad c_i:
  /// (lambda, mu) for constraints (g, h), or (lambda1, lambda2, mu) for
  /// (g1, g2, h) when delta = 0.
  std::vector<double> multipliers;
};

struct OracleResult {
  double delta = 0.0;
  int n = 0;
  double min_value = 0.0;
  SpectralPoint argmin;
  MinimizerStructure structure;
  double stationarity_residual = 0.0;
  std::vector<double> multipliers;
  int feasible_starts = 0;
};

/// Coordinates counted as free when checking first-order conditions:
/// p_j for occupied levels and eps_j for occupied levels with nonzero phase.
MinimizerStructure classify(const SpectralPoint& pt, const OracleConfig& config = {});

/// Least-squares Lagrange multipliers on the free coordinates and the
/// largest remaining component of grad f - sum m_i grad c_i there.
StationarityReport check_stationarity(const SpectralPoint& pt, double delta, const OracleConfig& config = {});

/// Residual of (eps - mu)^2 = 4 delta lambda^2 - 1 over the occupied nonzero phases.
double quadratic_relation_residual(const SpectralPoint& pt, double delta, const StationarityReport& report,
                                   const OracleConfig& config = {});

/// Multi-start search for min f on M = {g = delta, h = 1} (or {g1 = g2 = 0,
/// h = 1} at delta = 0) inside [0,1]^n x [0,2 pi]^n: feasibility restoration
/// by minimum-norm Gauss-Newton steps, projected-gradient descent with an
/// active set on the box, then Newton polishing of the KKT system.
OracleResult minimize_over_M(int n, double delta, const OracleConfig& config = {});

/// Feasible point near `seed` (minimum-norm restoration), or InfeasibleSearch.
SpectralPoint restore_feasibility(const SpectralPoint& seed, double delta);

/// (eps, p) pairs sorted ascending, used for deterministic tie-breaks.
SpectralPoint canonical(const SpectralPoint& pt);

}  // namespace qsl
