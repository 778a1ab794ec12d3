#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsl/geometry.hpp"

namespace qsl {

/// Curve psi_t = cos r phi + sin r e^{-i Lambda_t} w on the geodesic sphere of
/// radius r around sigma (phi its representative), with Lambda sampled
/// uniformly over [0, duration]. With this sign, a linear profile
/// Lambda_t = (eps1 - eps0) t is the Hamiltonian evolution of an effective
/// qubit and the dynamical phase is sin^2 r * Lambda_tau.
struct ExtremalCurveSpec {
  PureState sigma;
  double r = 0.0;
  StateVector w;
  std::vector<double> phase_profile;
  double duration = 1.0;
};

/// Checks the curve description: r in (0, pi/2), <phi|w> = 0, Lambda_0 = 0.
void validate(const ExtremalCurveSpec& spec);

/// Lambda_t = total * t / duration on `samples` points.
std::vector<double> linear_profile(double total, int samples);

/// Samples the curve on `samples` uniform points, interpolating the profile
/// linearly when the sample counts differ.
DiscretizedCurve extremal_curve(const ExtremalCurveSpec& spec, int samples);

/// Dynamical phase of the curve in the gauge of sigma.
double functional_J(const DiscretizedCurve& curve, const PureState& sigma);

DiscretizedCurve reverse(const DiscretizedCurve& curve);

/// Positive and negative extreme values +-sin^2 r arccos(1 - 2(1-delta)/sin^2 2r).
/// Both lie in [-pi, pi], so they are their own principal values.
std::pair<double, double> extreme_value(double r, double delta);

struct RadiusMinimum {
  double r = 0.0;
  double value = 0.0;
};

/// Smallest positive extreme value over the feasible radii: dense grid of
/// `grid_points` radii followed by golden-section refinement.
RadiusMinimum min_positive_extreme_value(double delta, int grid_points = 1001, double tol = 1e-12);

/// A variation of the curve at fixed radius: w_t -> normalize(w_t + h b(t) eta)
/// with eta orthogonal to phi and b vanishing at both ends, or (gauge) the
/// rotation w -> e^{i h} w of the whole curve about sigma.
struct Variation {
  CVector direction;
  std::vector<double> profile;
  bool gauge = false;
};

/// The curve of `spec` sampled at `samples` points, varied by h * variation.
/// Throws InvalidVariation for variations that would move the endpoints or
/// leave the sphere.
DiscretizedCurve varied_curve(const ExtremalCurveSpec& spec, int samples, const Variation& variation, double h);

struct StationarityTestReport {
  double first_order = 0.0;       // max |dJ| estimate at magnitude h
  double first_order_half = 0.0;  // the same at h / 2
  double gauge_change = 0.0;      // |J(gauge-rotated) - J|
};

/// sin^2(pi m u) on `samples` points of u in [0, 1]; zero at both ends.
std::vector<double> bump_profile(int samples, int lobes);

/// Central-difference directional derivatives (J(h) - J(-h)) / 2h of J along
/// `n_perturbations` random fixed-endpoint bump variations. The base curve
/// is the extremal curve of `spec`, optionally deformed by base_h * base.
StationarityTestReport stationarity_test(const ExtremalCurveSpec& spec, int samples, int n_perturbations,
                                         double magnitude, std::uint64_t seed = 1, const Variation* base = nullptr,
                                         double base_h = 0.0);

}  // namespace qsl
