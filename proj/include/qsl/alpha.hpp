#pragma once

#include <functional>

namespace qsl {

/// The extended Margolus-Levitin action alpha(delta) together with its
/// minimizer, given both as a Bloch height z and as the geodesic radius r
/// around the ground state (z = -cos 2r).
struct AlphaResult {
  double delta = 0.0;
  double value = 0.0;
  double z_star = 0.0;
  double r_star = 0.0;
};

inline constexpr double kDefaultAlphaTol = 1e-10;
inline constexpr int kAlphaScanPoints = 4001;

/// (1+z)/2 * arccos((2 delta - 1 - z^2) / (1 - z^2)), the normalized action
/// of a qubit at Bloch height z that reaches fidelity delta.
double objective_z(double delta, double z);

/// sin^2 r * arccos(1 - 2(1-delta)/sin^2 2r): the same action written in
/// terms of the distance r to the ground state.
double objective_r(double delta, double r);

/// Feasible minimizer intervals.
double z_lower(double delta);
double z_upper(double delta);
double r_lower(double delta);
double r_upper(double delta);

AlphaResult alpha(double delta, double tol = kDefaultAlphaTol);
AlphaResult alpha_via_r(double delta, double tol = kDefaultAlphaTol);

/// Result of a dense scan followed by golden-section refinement of the
/// bracket around the smallest sample.
struct ScanMinimum {
  double x = 0.0;
  double value = 0.0;
};

ScanMinimum scan_and_golden(const std::function<double(double)>& f, double lo, double hi,
                            int scan_points, double tol);

/// Number of strict interior local minima of `f` on a uniform grid of
/// `points` samples, after collapsing plateaus whose variation is below
/// `flat_tol`. Used as evidence that the minimizer is unique.
int count_local_minima(const std::function<double(double)>& f, double lo, double hi, int points,
                       double flat_tol);

}  // namespace qsl
