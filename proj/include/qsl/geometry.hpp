#pragma once

#include <vector>

#include "qsl/core_quantum.hpp"

namespace qsl {

/// Tangent vector to projective space at `base`: a traceless Hermitian
/// matrix X with X = base X + X base.
class TangentAtState {
 public:
  TangentAtState(PureState base, CMatrix direction);

  /// Tangent of the projector curve |psi><psi| along a vector velocity.
  /// The velocity is made horizontal first, so any lift works.
  static TangentAtState from_velocity(const StateVector& psi, const CVector& velocity);

  const PureState& base() const noexcept { return base_; }
  const CMatrix& direction() const noexcept { return direction_; }

 private:
  PureState base_;
  CMatrix direction_;
};

/// arccos sqrt(fidelity), in [0, pi/2].
double fs_distance(const PureState& a, const PureState& b);
double fs_distance(const StateVector& a, const StateVector& b);

/// g(u, v) = tr(uv) / 2.
double fs_metric(const TangentAtState& u, const TangentAtState& v);
/// omega(u, v) = -i tr([u, v] rho).
double fs_symplectic(const TangentAtState& u, const TangentAtState& v);

/// The representative of rho in phase with phi (<phi|psi> > 0).
StateVector in_phase_lift(const StateVector& phi, const PureState& rho);
StateVector in_phase_lift(const StateVector& phi, const StateVector& psi);

/// Consecutive samples must have fidelity above this.
inline constexpr double kResolutionFidelity = 0.99;

/// Uniformly sampled curve of states. Sample phases are arbitrary; every
/// phase-sensitive computation works on in-phase lifts.
class DiscretizedCurve {
 public:
  DiscretizedCurve(std::vector<StateVector> samples, double step);

  const std::vector<StateVector>& samples() const noexcept { return samples_; }
  const StateVector& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const noexcept { return samples_.size(); }
  const StateVector& front() const { return samples_.front(); }
  const StateVector& back() const { return samples_.back(); }
  double step() const noexcept { return step_; }
  double duration() const noexcept { return step_ * static_cast<double>(samples_.size() - 1); }
  Eigen::Index dim() const { return samples_.front().dim(); }

  DiscretizedCurve reversed() const;

 private:
  std::vector<StateVector> samples_;
  double step_;
};

/// psi evolved under h at t = k tau / steps, k = 0..steps.
DiscretizedCurve hamiltonian_curve(const HermitianOperator& h, const StateVector& psi, double tau, int steps);

/// Shortest unit-speed geodesic from sigma to rho, sampled uniformly in arc length.
DiscretizedCurve geodesic(const PureState& sigma, const PureState& rho, int samples);

/// Sum of Fubini-Study distances between neighbours.
double fs_length(const DiscretizedCurve& curve);

/// Distance between neighbours divided by the parameter step.
std::vector<double> fs_speeds(const DiscretizedCurve& curve);

/// Largest norm of the covariant acceleration [[P'', P], P] over interior
/// samples, with P'' from second differences of the projectors.
double max_covariant_acceleration(const DiscretizedCurve& curve);

/// Pointwise Berry integrand i<psi|psi'> along the lift in phase with sigma.
/// Derivatives use fourth-order differences (one-sided near the ends).
std::vector<double> berry_integrand(const DiscretizedCurve& curve, const PureState& sigma);

/// Trapezoid quadrature of berry_integrand.
double dynamical_phase(const DiscretizedCurve& curve, const PureState& sigma);

/// A closed loop made of consecutive segments; the last sample of each
/// segment coincides with the first of the next, and the loop starts and
/// ends at sigma.
struct ClosedCurve {
  PureState sigma;
  std::vector<DiscretizedCurve> segments;
};

/// Geodesic from sigma to the curve start, the curve, geodesic back to sigma.
ClosedCurve sigma_closure(const DiscretizedCurve& curve, const PureState& sigma, int leg_samples = 257);

double fs_length(const ClosedCurve& loop);
double dynamical_phase(const ClosedCurve& loop);

/// Ruled surface Sigma(s, t) = cos s phi + sin s w_t, s in [0, r], spanned by
/// the geodesics from sigma to each sample of a curve at constant distance r.
/// Grid points are generated on demand from phi and the directions w_t.
class SeifertSurface {
 public:
  SeifertSurface(StateVector phi, std::vector<CVector> directions, double radius, int s_points, double t_step);

  int s_points() const noexcept { return s_points_; }
  int t_points() const noexcept { return static_cast<int>(directions_.size()); }
  double s_step() const noexcept { return s_points_ > 1 ? radius_ / (s_points_ - 1) : 0.0; }
  double t_step() const noexcept { return t_step_; }
  double radius() const noexcept { return radius_; }
  const StateVector& phi() const noexcept { return phi_; }

  /// Lift in phase with phi at grid node (i, j).
  CVector at(int i, int j) const;

 private:
  StateVector phi_;
  std::vector<CVector> directions_;
  double radius_;
  int s_points_;
  double t_step_;
};

inline constexpr int kDefaultSurfacePoints = 256;

SeifertSurface ruled_seifert_surface(const PureState& sigma, const DiscretizedCurve& curve,
                                     int s_points = kDefaultSurfacePoints);

/// Integral of omega(d_s Sigma, d_t Sigma) by the composite midpoint rule.
double symplectic_area(const SeifertSurface& surface);

/// Integral of omega over the Bloch sphere of a qubit, parametrized by polar
/// and azimuthal angle on an n_theta x n_phi cell grid.
double bloch_sphere_area(int n_theta, int n_phi);

/// Representative of x mod 2 pi in (-pi, pi].
double wrap_to_pi(double x);

/// Minus the symplectic area of the ruled surface, reduced mod 2 pi.
double aa_phase_mod_2pi(const SeifertSurface& surface);
double aa_phase_mod_2pi(const ClosedCurve& loop, int s_points = kDefaultSurfacePoints);

struct SubRiemannianReport {
  double radius = 0.0;
  double gap = 0.0;
  double max_acceleration = 0.0;
  double max_residual = 0.0;
  double coefficient = 0.0;
  double coefficient_spread = 0.0;
  double expected_coefficient = 0.0;
  bool geodesic = false;
};

/// Effective-qubit trajectory of psi under h, viewed from the eigenstate
/// sigma_level: fits the covariant acceleration to c times the unit radial
/// velocity pointing away from sigma, at `samples` times in [0, duration].
SubRiemannianReport sub_riemannian_check(const HermitianOperator& h, const StateVector& psi,
                                         Eigen::Index sigma_level, double duration, int samples = 32);

}  // namespace qsl
