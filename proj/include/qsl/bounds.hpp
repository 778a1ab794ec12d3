#pragma once

#include "qsl/alpha.hpp"
#include "qsl/core_quantum.hpp"

namespace qsl {

/// Slope of the line y = 1 - beta x tangent to cos x, and the tangency point.
struct BetaConstant {
  double beta = 0.0;
  double x0 = 0.0;
};

/// Bisection for cos x + x sin x = 1 on (pi/2, pi) down to 1e-14.
BetaConstant beta();

/// Every evolution-time lower bound for a system with the given energy
/// statistics reaching fidelity delta. Times are in inverse energy units.
struct BoundReport {
  double delta = 0.0;
  double tau_mt = 0.0;
  double tau_ml = 0.0;
  double tau_ml_dual = 0.0;
  double tau_max = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
  double variance = 0.0;
  double normalized_mean = 0.0;
  double dual_mean = 0.0;
};

/// Stats with variance, normalized mean or dual mean at or below this value
/// describe a system that does not evolve.
inline constexpr double kStationaryThreshold = 1e-14;

BoundReport bound_report(double delta, const EnergyStats& stats, double tol = kDefaultAlphaTol);

/// Same report with alpha(delta) already computed (grid sweeps reuse it).
BoundReport bound_report(const AlphaResult& a, const EnergyStats& stats);

/// Fidelity in (0, 1) where tau1 and tau3 cross, located by bisection on
/// their difference at unit normalized energy.
double tau1_tau3_crossing(double tol = 1e-12);

}  // namespace qsl
