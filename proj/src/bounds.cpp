#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qsl {

namespace {

double tangency_residual(double x) { return std::cos(x) + x * std::sin(x) - 1.0; }

}  // namespace

BetaConstant beta() {
  // The residual is positive at pi/2 and negative at pi, with a single root.
  double lo = kPi / 2.0;
  double hi = kPi;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (tangency_residual(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double x0 = std::abs(tangency_residual(lo)) < std::abs(tangency_residual(hi)) ? lo : hi;
  return {std::sin(x0), x0};
}

BoundReport bound_report(const AlphaResult& a, const EnergyStats& stats) {
  if (stats.variance <= kStationaryThreshold || stats.normalized_mean <= kStationaryThreshold ||
      stats.dual_mean <= kStationaryThreshold) {
    throw Error(ErrorCode::StationaryState, "no nontrivial evolution; bounds are undefined");
  }
  static const double b = beta().beta;
  const double delta = a.delta;
  const double acos_sqrt = std::acos(std::clamp(std::sqrt(delta), 0.0, 1.0));
  const double dh = stats.uncertainty();
  const double e = stats.normalized_mean;

  BoundReport r;
  r.delta = delta;
  r.variance = stats.variance;
  r.normalized_mean = stats.normalized_mean;
  r.dual_mean = stats.dual_mean;
  r.tau_mt = acos_sqrt / dh;
  r.tau_ml = a.value / e;
  r.tau_ml_dual = a.value / stats.dual_mean;
  r.tau_max = std::max(r.tau_mt, r.tau_ml);
  r.tau1 = (1.0 - std::sqrt(delta)) / (b * e);
  r.tau2 = 4.0 * acos_sqrt * acos_sqrt / (b * kPi * kPi * e);
  r.tau3 = 2.0 * acos_sqrt * acos_sqrt / (kPi * e);
  return r;
}

BoundReport bound_report(double delta, const EnergyStats& stats, double tol) {
  return bound_report(alpha(delta, tol), stats);
}

double tau1_tau3_crossing(double tol) {
  const double b = beta().beta;
  auto diff = [b](double d) {
    const double u = std::acos(std::sqrt(d));
    return (1.0 - std::sqrt(d)) / b - 2.0 * u * u / kPi;
  };
  // tau3 dominates near 0 and tau1 near 1.
  double lo = 1e-6;
  double hi = 1.0 - 1e-6;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (diff(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qsl
