#include "qsl/extremal_phase.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qsl/alpha.hpp"
#include "qsl/random.hpp"

namespace qsl {

namespace {

double profile_at(const std::vector<double>& profile, double u) {
  const double pos = u * static_cast<double>(profile.size() - 1);
  const auto k = static_cast<std::size_t>(std::min(std::floor(pos), static_cast<double>(profile.size() - 2)));
  const double frac = pos - static_cast<double>(k);
  return (1.0 - frac) * profile[k] + frac * profile[k + 1];
}

std::vector<double> resample(const std::vector<double>& profile, int samples) {
  if (static_cast<int>(profile.size()) == samples) return profile;
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) out[static_cast<std::size_t>(k)] = profile_at(profile, double(k) / (samples - 1));
  return out;
}

double raw_extreme_value(double r, double delta) {
  if (delta == 1.0) return 0.0;
  const double s2 = std::sin(2.0 * r);
  const double arg = 1.0 - 2.0 * (1.0 - delta) / (s2 * s2);
  if (!(arg >= -1.0 - 1e-12)) throw Error(ErrorCode::InfeasibleRadius, "no curve at this radius reaches fidelity delta");
  const double sr = std::sin(r);
  return sr * sr * std::acos(std::clamp(arg, -1.0, 1.0));
}

}  // namespace

void validate(const ExtremalCurveSpec& spec) {
  require_same_dim(spec.sigma.dim(), spec.w.dim(), "ExtremalCurveSpec");
  if (!(spec.r > 0.0 && spec.r < kPi / 2.0)) throw Error(ErrorCode::InvalidArgument, "r must lie in (0, pi/2)");
  if (std::abs(spec.sigma.representative().amplitudes().dot(spec.w.amplitudes())) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "w must be orthogonal to sigma");
  }
  if (spec.phase_profile.size() < 2) throw Error(ErrorCode::InvalidArgument, "profile needs at least two samples");
  if (spec.phase_profile.front() != 0.0) throw Error(ErrorCode::InvalidArgument, "profile must start at 0");
  if (!(spec.duration > 0.0)) throw Error(ErrorCode::InvalidArgument, "duration must be positive");
}

std::vector<double> linear_profile(double total, int samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) out[static_cast<std::size_t>(k)] = total * k / (samples - 1);
  out.front() = 0.0;
  return out;
}

double functional_J(const DiscretizedCurve& curve, const PureState& sigma) { return dynamical_phase(curve, sigma); }

DiscretizedCurve reverse(const DiscretizedCurve& curve) { return curve.reversed(); }

std::pair<double, double> extreme_value(double r, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1]");
  const double v = raw_extreme_value(r, delta);
  return {v, -v};
}

RadiusMinimum min_positive_extreme_value(double delta, int grid_points, double tol) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1]");
  if (delta == 1.0) return {0.0, 0.0};
  const double lo = 0.5 * std::acos(std::sqrt(delta));
  const double hi = 0.5 * std::acos(-std::sqrt(delta));
  const auto best = scan_and_golden([delta](double r) { return raw_extreme_value(r, delta); }, lo, hi,
                                    std::max(grid_points, 3), tol);
  return {best.x, best.value};
}

namespace {

void check_variation(const Variation& v, const CVector& phi, int samples) {
  if (v.gauge) return;
  require_same_dim(v.direction.size(), phi.size(), "Variation");
  if (std::abs(phi.dot(v.direction)) > 1e-12) {
    throw Error(ErrorCode::InvalidVariation, "variation leaves the geodesic sphere");
  }
  if (static_cast<int>(v.profile.size()) != samples) {
    throw Error(ErrorCode::InvalidVariation, "variation profile must have one value per sample");
  }
  if (std::abs(v.profile.front()) > 1e-14 || std::abs(v.profile.back()) > 1e-14) {
    throw Error(ErrorCode::InvalidVariation, "variation moves an endpoint");
  }
}

using Perturbation = std::pair<const Variation*, double>;

DiscretizedCurve build_curve(const ExtremalCurveSpec& spec, int samples, const std::vector<Perturbation>& perts) {
  validate(spec);
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const CVector& phi = spec.sigma.representative().amplitudes();
  const std::vector<double> lambda = resample(spec.phase_profile, samples);
  Complex gauge{1.0, 0.0};
  for (const auto& [v, h] : perts) {
    check_variation(*v, phi, samples);
    if (v->gauge) gauge *= std::exp(kI * h);
  }
  std::vector<StateVector> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const auto i = static_cast<std::size_t>(k);
    CVector wt = std::exp(-kI * lambda[i]) * spec.w.amplitudes();
    bool moved = false;
    for (const auto& [v, h] : perts) {
      if (v->gauge || h == 0.0) continue;
      wt += h * v->profile[i] * v->direction;
      moved = true;
    }
    if (moved) wt /= wt.norm();
    wt *= gauge;
    pts.push_back(make_state(CVector(std::cos(spec.r) * phi + std::sin(spec.r) * wt)));
  }
  return DiscretizedCurve(std::move(pts), spec.duration / (samples - 1));
}

}  // namespace

DiscretizedCurve varied_curve(const ExtremalCurveSpec& spec, int samples, const Variation& variation, double h) {
  return build_curve(spec, samples, {{&variation, h}});
}

DiscretizedCurve extremal_curve(const ExtremalCurveSpec& spec, int samples) { return build_curve(spec, samples, {}); }

StationarityTestReport stationarity_test(const ExtremalCurveSpec& spec, int samples, int n_perturbations,
                                         double magnitude, std::uint64_t seed, const Variation* base,
                                         double base_h) {
  validate(spec);
  if (n_perturbations < 1) throw Error(ErrorCode::InvalidArgument, "need at least one perturbation");
  if (!(magnitude > 0.0)) throw Error(ErrorCode::InvalidArgument, "magnitude must be positive");
  const CVector& phi = spec.sigma.representative().amplitudes();
  std::vector<Perturbation> start;
  if (base != nullptr) start.emplace_back(base, base_h);
  auto J = [&](const Variation* v, double h) {
    auto perts = start;
    if (v != nullptr) perts.emplace_back(v, h);
    return functional_J(build_curve(spec, samples, perts), spec.sigma);
  };
  const double j0 = J(nullptr, 0.0);

  StationarityTestReport rep;
  Variation gauge;
  gauge.gauge = true;
  rep.gauge_change = std::abs(J(&gauge, 0.7) - j0);

  auto directional = [&](const Variation& v, double h) { return (J(&v, h) - J(&v, -h)) / (2.0 * h); };

  for (int k = 0; k < n_perturbations; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Variation v;
    CVector eta = haar_state(phi.size(), rng).amplitudes();
    eta -= phi * phi.dot(eta);
    v.direction = eta / eta.norm();
    // Smooth bump sin^2(pi m u) with a random number of lobes.
    const int lobes = 1 + static_cast<int>(3.0 * unit(rng));
    v.profile = bump_profile(samples, lobes);
    rep.first_order = std::max(rep.first_order, std::abs(directional(v, magnitude)));
    rep.first_order_half = std::max(rep.first_order_half, std::abs(directional(v, 0.5 * magnitude)));
  }
  return rep;
}

std::vector<double> bump_profile(int samples, int lobes) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double s = std::sin(kPi * lobes * i / (samples - 1));
    out[static_cast<std::size_t>(i)] = s * s;
  }
  out.front() = 0.0;
  out.back() = 0.0;
  return out;
}

}  // namespace qsl
