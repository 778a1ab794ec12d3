#include "qsl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsl/parallel.hpp"

namespace qsl {

namespace {

constexpr double kOmegaFidelity = 1e-14;

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v, 0, v.size()); }

void require_same_base(const TangentAtState& u, const TangentAtState& v) {
  require_same_dim(u.base().dim(), v.base().dim(), "tangent pair");
  if ((u.base().projector() - v.base().projector()).norm() > 1e-10) {
    throw Error(ErrorCode::BaseMismatch, "tangent vectors live at different states");
  }
}

// Fourth-order derivative estimates of uniformly spaced vectors.
std::vector<CVector> differentiate(const std::vector<CVector>& f, double h) {
  const std::size_t n = f.size();
  std::vector<CVector> d(n);
  if (n < 5) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == 0) {
        d[k] = (f[1] - f[0]) / h;
      } else if (k == n - 1) {
        d[k] = (f[k] - f[k - 1]) / h;
      } else {
        d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
      }
    }
    return d;
  }
  const double c = 1.0 / (12.0 * h);
  d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (std::size_t k = 2; k + 2 < n; ++k) d[k] = c * (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]);
  d[n - 2] = -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
  d[n - 1] = -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]);
  return d;
}

// Unit-speed geodesic samples from phi to the lift psi (in phase with phi).
std::vector<StateVector> geodesic_samples(const CVector& phi, const CVector& psi, int samples, double* step) {
  const double c = std::clamp(phi.dot(psi).real(), -1.0, 1.0);
  const double d = std::acos(c);
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(samples));
  if (d < 1e-12) {
    for (int k = 0; k < samples; ++k) out.push_back(make_state(psi));
    *step = 0.0;
    return out;
  }
  const CVector u = (psi - c * phi) / std::sin(d);
  *step = d / (samples - 1);
  for (int k = 0; k < samples; ++k) {
    const double s = k == samples - 1 ? d : *step * k;
    out.push_back(make_state(CVector(std::cos(s) * phi + std::sin(s) * u)));
  }
  return out;
}

CMatrix projector_of(const CVector& v) { return v * v.adjoint(); }

CMatrix tangential(const CMatrix& x, const CMatrix& p) { return x * p + p * x - 2.0 * p * x * p; }

// Sum over one row of cells of 2 Im <a_h | b_h> with a, b the differences
// across the cell in the two parameter directions and _h the projection
// orthogonal to the normalized cell-center average.
double omega_row(const std::vector<CVector>& lo, const std::vector<CVector>& hi) {
  double sum = 0.0;
  CVector c(lo.front().size());
  CVector a(c.size());
  CVector b(c.size());
  for (std::size_t j = 0; j + 1 < lo.size(); ++j) {
    c.noalias() = lo[j] + lo[j + 1] + hi[j] + hi[j + 1];
    c /= c.norm();
    a.noalias() = 0.5 * ((hi[j] + hi[j + 1]) - (lo[j] + lo[j + 1]));
    b.noalias() = 0.5 * ((lo[j + 1] + hi[j + 1]) - (lo[j] + hi[j]));
    const Complex ca = c.dot(a);
    const Complex cb = c.dot(b);
    sum += 2.0 * (a.dot(b) - std::conj(ca) * cb).imag();
  }
  return sum;
}

template <class Fill>
double omega_quadrature(int s_points, int t_points, const Fill& fill) {
  if (s_points < 2 || t_points < 2) return 0.0;
  const auto rows = parallel_map<double>(static_cast<std::size_t>(s_points - 1), [&](std::size_t i) {
    std::vector<CVector> lo(static_cast<std::size_t>(t_points));
    std::vector<CVector> hi(static_cast<std::size_t>(t_points));
    for (int j = 0; j < t_points; ++j) {
      fill(static_cast<int>(i), j, lo[static_cast<std::size_t>(j)]);
      fill(static_cast<int>(i) + 1, j, hi[static_cast<std::size_t>(j)]);
    }
    return omega_row(lo, hi);
  });
  return pairwise_sum(rows);
}

}  // namespace

TangentAtState::TangentAtState(PureState base, CMatrix direction)
    : base_(std::move(base)), direction_(std::move(direction)) {
  require_same_dim(base_.dim(), direction_.rows(), "TangentAtState");
  if (direction_.rows() != direction_.cols()) throw Error(ErrorCode::InvalidArgument, "direction must be square");
  const double scale = std::max(1.0, direction_.norm());
  if ((direction_ - direction_.adjoint()).norm() > 1e-10 * scale) {
    throw Error(ErrorCode::InvalidArgument, "direction is not Hermitian");
  }
  if (std::abs(direction_.trace()) > 1e-10 * scale) throw Error(ErrorCode::InvalidArgument, "direction is not traceless");
  const CMatrix& p = base_.projector();
  if ((p * direction_ + direction_ * p - direction_).norm() > 1e-10 * scale) {
    throw Error(ErrorCode::InvalidArgument, "direction is not tangent at the base state");
  }
}

TangentAtState TangentAtState::from_velocity(const StateVector& psi, const CVector& velocity) {
  require_same_dim(psi.dim(), velocity.size(), "from_velocity");
  const CVector& v = psi.amplitudes();
  const CVector a = velocity - v * v.dot(velocity);
  return TangentAtState(PureState(psi), a * v.adjoint() + v * a.adjoint());
}

double fs_distance(const PureState& a, const PureState& b) {
  return std::acos(std::clamp(std::sqrt(std::max(fidelity(a, b), 0.0)), 0.0, 1.0));
}

double fs_distance(const StateVector& a, const StateVector& b) {
  return std::acos(std::clamp(std::sqrt(std::max(fidelity(a, b), 0.0)), 0.0, 1.0));
}

double fs_metric(const TangentAtState& u, const TangentAtState& v) {
  require_same_base(u, v);
  return 0.5 * (u.direction() * v.direction()).trace().real();
}

double fs_symplectic(const TangentAtState& u, const TangentAtState& v) {
  require_same_base(u, v);
  const CMatrix comm = u.direction() * v.direction() - v.direction() * u.direction();
  return (-kI * (comm * u.base().projector()).trace()).real();
}

StateVector in_phase_lift(const StateVector& phi, const StateVector& psi) {
  require_same_dim(phi.dim(), psi.dim(), "in_phase_lift");
  const Complex ov = phi.amplitudes().dot(psi.amplitudes());
  if (std::norm(ov) < kOmegaFidelity) throw Error(ErrorCode::OutsideOmega, "state is orthogonal to the reference");
  return make_state(CVector(psi.amplitudes() * (std::conj(ov) / std::abs(ov))));
}

StateVector in_phase_lift(const StateVector& phi, const PureState& rho) {
  return in_phase_lift(phi, rho.representative());
}

DiscretizedCurve::DiscretizedCurve(std::vector<StateVector> samples, double step)
    : samples_(std::move(samples)), step_(step) {
  if (samples_.size() < 2) throw Error(ErrorCode::InvalidArgument, "a curve needs at least two samples");
  if (!(step_ >= 0.0) || !std::isfinite(step_)) throw Error(ErrorCode::InvalidArgument, "step must be finite");
  for (std::size_t k = 1; k < samples_.size(); ++k) {
    require_same_dim(samples_[k].dim(), samples_[0].dim(), "DiscretizedCurve");
    if (fidelity(samples_[k - 1], samples_[k]) <= kResolutionFidelity) {
      throw Error(ErrorCode::UnderResolved, "neighbouring samples are too far apart");
    }
  }
}

DiscretizedCurve DiscretizedCurve::reversed() const {
  return DiscretizedCurve(std::vector<StateVector>(samples_.rbegin(), samples_.rend()), step_);
}

DiscretizedCurve hamiltonian_curve(const HermitianOperator& h, const StateVector& psi, double tau, int steps) {
  require_same_dim(h.dim(), psi.dim(), "hamiltonian_curve");
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "need at least one step");
  if (!(tau >= 0.0)) throw Error(ErrorCode::InvalidArgument, "duration must be nonnegative");
  const CVector c = h.eigenvectors().adjoint() * psi.amplitudes();
  const double step = tau / steps;
  std::vector<StateVector> samples;
  samples.reserve(static_cast<std::size_t>(steps) + 1);
  CVector phased(c.size());
  for (int k = 0; k <= steps; ++k) {
    const double t = k == steps ? tau : step * k;
    for (Eigen::Index j = 0; j < c.size(); ++j) phased(j) = c(j) * std::exp(-kI * (h.eigenvalues()(j) * t));
    samples.push_back(make_state(CVector(h.eigenvectors() * phased)));
  }
  return DiscretizedCurve(std::move(samples), step);
}

DiscretizedCurve geodesic(const PureState& sigma, const PureState& rho, int samples) {
  require_same_dim(sigma.dim(), rho.dim(), "geodesic");
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const double d = fs_distance(sigma, rho);
  if (d < 1e-12 || d > kPi / 2.0 - 1e-12) {
    throw Error(ErrorCode::DegenerateGeodesic, "endpoints coincide or are orthogonal");
  }
  const CVector& phi = sigma.representative().amplitudes();
  const CVector psi = in_phase_lift(sigma.representative(), rho).amplitudes();
  double step = 0.0;
  auto pts = geodesic_samples(phi, psi, samples, &step);
  return DiscretizedCurve(std::move(pts), step);
}

double fs_length(const DiscretizedCurve& curve) {
  std::vector<double> parts(curve.size() - 1);
  for (std::size_t k = 1; k < curve.size(); ++k) parts[k - 1] = fs_distance(curve[k - 1], curve[k]);
  return pairwise_sum(parts);
}

std::vector<double> fs_speeds(const DiscretizedCurve& curve) {
  std::vector<double> out(curve.size() - 1);
  for (std::size_t k = 1; k < curve.size(); ++k) out[k - 1] = fs_distance(curve[k - 1], curve[k]) / curve.step();
  return out;
}

double max_covariant_acceleration(const DiscretizedCurve& curve) {
  if (curve.size() < 3 || curve.step() == 0.0) return 0.0;
  const double h2 = curve.step() * curve.step();
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < curve.size(); ++k) {
    const CMatrix p = curve[k].projector();
    const CMatrix pdd = (curve[k + 1].projector() - 2.0 * p + curve[k - 1].projector()) / h2;
    worst = std::max(worst, tangential(pdd, p).norm());
  }
  return worst;
}

std::vector<double> berry_integrand(const DiscretizedCurve& curve, const PureState& sigma) {
  require_same_dim(curve.dim(), sigma.dim(), "berry_integrand");
  const StateVector& phi = sigma.representative();
  std::vector<CVector> lifts;
  lifts.reserve(curve.size());
  for (const auto& s : curve.samples()) lifts.push_back(in_phase_lift(phi, s).amplitudes());
  std::vector<double> out(curve.size(), 0.0);
  if (curve.step() == 0.0) return out;
  const auto d = differentiate(lifts, curve.step());
  for (std::size_t k = 0; k < lifts.size(); ++k) out[k] = -lifts[k].dot(d[k]).imag();
  return out;
}

double dynamical_phase(const DiscretizedCurve& curve, const PureState& sigma) {
  const auto a = berry_integrand(curve, sigma);
  std::vector<double> parts(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) parts[k - 1] = 0.5 * (a[k - 1] + a[k]) * curve.step();
  return pairwise_sum(parts);
}

ClosedCurve sigma_closure(const DiscretizedCurve& curve, const PureState& sigma, int leg_samples) {
  require_same_dim(curve.dim(), sigma.dim(), "sigma_closure");
  if (leg_samples < 2) throw Error(ErrorCode::InvalidArgument, "legs need at least two samples");
  const CVector& phi = sigma.representative().amplitudes();
  const CVector start = in_phase_lift(sigma.representative(), curve.front()).amplitudes();
  const CVector end = in_phase_lift(sigma.representative(), curve.back()).amplitudes();

  double step_out = 0.0;
  double step_back = 0.0;
  auto out_pts = geodesic_samples(phi, start, leg_samples, &step_out);
  auto back_pts = geodesic_samples(phi, end, leg_samples, &step_back);
  std::reverse(back_pts.begin(), back_pts.end());

  ClosedCurve loop{sigma, {}};
  loop.segments.emplace_back(std::move(out_pts), step_out);
  loop.segments.push_back(curve);
  loop.segments.emplace_back(std::move(back_pts), step_back);
  return loop;
}

double fs_length(const ClosedCurve& loop) {
  double total = 0.0;
  for (const auto& seg : loop.segments) total += fs_length(seg);
  return total;
}

double dynamical_phase(const ClosedCurve& loop) {
  double total = 0.0;
  for (const auto& seg : loop.segments) total += dynamical_phase(seg, loop.sigma);
  return total;
}

SeifertSurface::SeifertSurface(StateVector phi, std::vector<CVector> directions, double radius, int s_points,
                               double t_step)
    : phi_(std::move(phi)), directions_(std::move(directions)), radius_(radius), s_points_(s_points),
      t_step_(t_step) {
  if (s_points_ < 2) throw Error(ErrorCode::InvalidArgument, "need at least two radial points");
  if (directions_.empty()) throw Error(ErrorCode::InvalidArgument, "surface needs a boundary curve");
}

CVector SeifertSurface::at(int i, int j) const {
  const double s = i == s_points_ - 1 ? radius_ : s_step() * i;
  return std::cos(s) * phi_.amplitudes() + std::sin(s) * directions_[static_cast<std::size_t>(j)];
}

SeifertSurface ruled_seifert_surface(const PureState& sigma, const DiscretizedCurve& curve, int s_points) {
  require_same_dim(curve.dim(), sigma.dim(), "ruled_seifert_surface");
  const StateVector& phi = sigma.representative();
  const double r = fs_distance(PureState(curve.front()), sigma);
  std::vector<CVector> dirs;
  dirs.reserve(curve.size());
  for (const auto& s : curve.samples()) {
    const double rk = fs_distance(s, phi);
    if (std::abs(rk - r) > 1e-8) throw Error(ErrorCode::NotOnGeodesicSphere, "curve radius is not constant");
    if (r < 1e-12) {
      dirs.push_back(CVector::Zero(phi.dim()));
      continue;
    }
    const CVector psi = in_phase_lift(phi, s).amplitudes();
    dirs.push_back((psi - std::cos(r) * phi.amplitudes()) / std::sin(r));
  }
  return SeifertSurface(phi, std::move(dirs), r, s_points, curve.step());
}

double symplectic_area(const SeifertSurface& surface) {
  if (surface.radius() < 1e-12) return 0.0;
  return omega_quadrature(surface.s_points(), surface.t_points(),
                          [&](int i, int j, CVector& out) { out = surface.at(i, j); });
}

double bloch_sphere_area(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw Error(ErrorCode::InvalidArgument, "grid must be nonempty");
  const double dth = kPi / n_theta;
  const double dph = 2.0 * kPi / n_phi;
  return omega_quadrature(n_theta + 1, n_phi + 1, [&](int i, int j, CVector& out) {
    const double th = i == n_theta ? kPi : dth * i;
    const double ph = j == n_phi ? 2.0 * kPi : dph * j;
    out.resize(2);
    out(0) = std::cos(0.5 * th);
    out(1) = std::exp(kI * ph) * std::sin(0.5 * th);
  });
}

double wrap_to_pi(double x) {
  double y = std::fmod(x, 2.0 * kPi);
  if (y > kPi) y -= 2.0 * kPi;
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

double aa_phase_mod_2pi(const SeifertSurface& surface) { return wrap_to_pi(-symplectic_area(surface)); }

double aa_phase_mod_2pi(const ClosedCurve& loop, int s_points) {
  if (loop.segments.size() != 3) throw Error(ErrorCode::InvalidArgument, "expected a sigma-closure");
  return aa_phase_mod_2pi(ruled_seifert_surface(loop.sigma, loop.segments[1], s_points));
}

SubRiemannianReport sub_riemannian_check(const HermitianOperator& h, const StateVector& psi,
                                         Eigen::Index sigma_level, double duration, int samples) {
  require_same_dim(h.dim(), psi.dim(), "sub_riemannian_check");
  if (sigma_level < 0 || sigma_level >= h.dim()) throw Error(ErrorCode::InvalidArgument, "no such level");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");

  const RVector weights = (h.eigenvectors().adjoint() * psi.amplitudes()).cwiseAbs2();
  std::vector<double> levels;
  for (Eigen::Index k = 0; k < h.dim(); ++k) {
    if (weights(k) <= 1e-10) continue;
    const double e = h.eigenvalues()(k);
    if (std::none_of(levels.begin(), levels.end(), [e](double x) { return std::abs(x - e) < 1e-9; })) {
      levels.push_back(e);
    }
  }
  const double e_sigma = h.eigenvalues()(sigma_level);
  if (levels.size() != 2 ||
      std::none_of(levels.begin(), levels.end(), [e_sigma](double x) { return std::abs(x - e_sigma) < 1e-9; })) {
    throw Error(ErrorCode::NotEffectiveQubit, "state must occupy exactly the sigma level and one other");
  }

  const StateVector phi = h.eigenstate(sigma_level);
  SubRiemannianReport rep;
  rep.gap = std::abs(levels[1] - levels[0]);
  rep.radius = fs_distance(phi, psi);
  rep.expected_coefficient = -0.25 * rep.gap * rep.gap * std::sin(4.0 * rep.radius);
  rep.geodesic = std::abs(rep.radius - kPi / 4.0) < 1e-12;

  const double hstep = 1e-2 / rep.gap;
  auto proj = [&](double t) { return projector_of(evolve(h, psi, t).amplitudes()); };
  std::vector<double> coeffs;
  for (int k = 0; k < samples; ++k) {
    const double t = samples == 1 ? 0.0 : duration * k / (samples - 1);
    const CMatrix p = proj(t);
    const CMatrix pdd = (-proj(t + 2 * hstep) + 16.0 * proj(t + hstep) - 30.0 * p + 16.0 * proj(t - hstep) -
                         proj(t - 2 * hstep)) /
                        (12.0 * hstep * hstep);
    const CMatrix acc = tangential(pdd, p);

    const CVector lift = in_phase_lift(phi, evolve(h, psi, t)).amplitudes();
    const CVector w = (lift - std::cos(rep.radius) * phi.amplitudes()) / std::sin(rep.radius);
    const CVector radial = -std::sin(rep.radius) * phi.amplitudes() + std::cos(rep.radius) * w;
    const CMatrix vr = radial * lift.adjoint() + lift * radial.adjoint();

    const double c = (vr * acc).trace().real() / (vr * vr).trace().real();
    rep.max_acceleration = std::max(rep.max_acceleration, acc.norm());
    rep.max_residual = std::max(rep.max_residual, (acc - c * vr).norm());
    coeffs.push_back(c);
  }
  rep.coefficient = std::accumulate(coeffs.begin(), coeffs.end(), 0.0) / static_cast<double>(coeffs.size());
  const auto [lo, hi] = std::minmax_element(coeffs.begin(), coeffs.end());
  rep.coefficient_spread = *hi - *lo;
  return rep;
}

}  // namespace qsl
