#include "qsl/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qsl/core_quantum.hpp"

namespace qsl {

namespace {

// Arguments of arccos are allowed to overshoot [-1, 1] by this much (roundoff
// at the interval endpoints); anything larger is a caller error.
constexpr double kClampSlack = 1e-12;

double clamped_acos(double x) {
  if (x < -1.0 - kClampSlack || x > 1.0 + kClampSlack) {
    throw Error(ErrorCode::OutsideFeasibleInterval, "arccos argument outside [-1, 1]");
  }
  return std::acos(std::clamp(x, -1.0, 1.0));
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1]");
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidTolerance, "tolerance must be positive");
}

}  // namespace

double z_lower(double delta) { return -std::sqrt(delta); }
double z_upper(double delta) { return std::sqrt(delta); }
double r_lower(double delta) { return 0.5 * std::acos(std::sqrt(delta)); }
double r_upper(double delta) { return 0.5 * std::acos(-std::sqrt(delta)); }

double objective_z(double delta, double z) {
  check_delta(delta);
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::Singular, "|z| must be below 1");
  const double z2 = z * z;
  if (z2 > delta + 1e-14) throw Error(ErrorCode::OutsideFeasibleInterval, "z^2 exceeds delta");
  const double arg = (2.0 * delta - 1.0 - z2) / (1.0 - z2);
  return 0.5 * (1.0 + z) * clamped_acos(arg);
}

double objective_r(double delta, double r) {
  check_delta(delta);
  if (delta == 1.0) return 0.0;
  if (r < r_lower(delta) - 1e-14 || r > r_upper(delta) + 1e-14) {
    throw Error(ErrorCode::OutsideFeasibleInterval, "r outside the feasible radius interval");
  }
  const double s2r = std::sin(2.0 * r);
  const double sr = std::sin(r);
  return sr * sr * clamped_acos(1.0 - 2.0 * (1.0 - delta) / (s2r * s2r));
}

ScanMinimum scan_and_golden(const std::function<double(double)>& f, double lo, double hi,
                            int scan_points, double tol) {
  check_tol(tol);
  if (scan_points < 3) throw Error(ErrorCode::InvalidArgument, "scan needs at least 3 points");
  if (!(hi > lo)) return {lo, f(lo)};

  const double step = (hi - lo) / (scan_points - 1);
  auto node = [&](int i) { return i == scan_points - 1 ? hi : lo + step * i; };
  int best = 0;
  double best_value = f(lo);
  for (int i = 1; i < scan_points; ++i) {
    const double v = f(node(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }

  double a = node(std::max(best - 1, 0));
  double b = node(std::min(best + 1, scan_points - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double v = f(x);
  if (v <= best_value) return {x, v};
  return {node(best), best_value};
}

int count_local_minima(const std::function<double(double)>& f, double lo, double hi, int points,
                       double flat_tol) {
  if (points < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 points");
  const double step = (hi - lo) / (points - 1);
  std::vector<int> signs;
  double prev = f(lo);
  for (int i = 1; i < points; ++i) {
    const double cur = f(i == points - 1 ? hi : lo + step * i);
    const double d = cur - prev;
    if (std::abs(d) > flat_tol) {
      signs.push_back(d > 0 ? 1 : -1);
      prev = cur;
    }
  }
  int minima = 0;
  for (std::size_t i = 1; i < signs.size(); ++i) {
    if (signs[i - 1] < 0 && signs[i] > 0) ++minima;
  }
  return minima;
}

AlphaResult alpha(double delta, double tol) {
  check_delta(delta);
  check_tol(tol);
  if (delta == 1.0) return {1.0, 0.0, -1.0, 0.0};
  if (delta == 0.0) return {0.0, kPi / 2.0, 0.0, kPi / 4.0};
  const auto best = scan_and_golden([delta](double z) { return objective_z(delta, z); }, z_lower(delta),
                                    z_upper(delta), kAlphaScanPoints, tol);
  AlphaResult out;
  out.delta = delta;
  out.z_star = best.x;
  out.value = best.value;
  out.r_star = 0.5 * std::acos(std::clamp(-best.x, -1.0, 1.0));
  return out;
}

AlphaResult alpha_via_r(double delta, double tol) {
  check_delta(delta);
  check_tol(tol);
  if (delta == 1.0) return {1.0, 0.0, -1.0, 0.0};
  if (delta == 0.0) return {0.0, kPi / 2.0, 0.0, kPi / 4.0};
  const auto best = scan_and_golden([delta](double r) { return objective_r(delta, r); }, r_lower(delta),
                                    r_upper(delta), kAlphaScanPoints, tol);
  AlphaResult out;
  out.delta = delta;
  out.r_star = best.x;
  out.value = best.value;
  out.z_star = -std::cos(2.0 * best.x);
  return out;
}

}  // namespace qsl
