#include "qsl/first_passage.hpp"

#include <cmath>

namespace qsl {

FidelityEvaluator::FidelityEvaluator(const HermitianOperator& h, const StateVector& psi) {
  require_same_dim(h.dim(), psi.dim(), "FidelityEvaluator");
  energies_ = h.eigenvalues();
  const CVector c = h.eigenvectors().adjoint() * psi.amplitudes();
  weights_ = c.cwiseAbs2();
}

double FidelityEvaluator::value(double t) const {
  Complex a{0.0, 0.0};
  for (Eigen::Index k = 0; k < energies_.size(); ++k) a += weights_(k) * std::exp(-kI * (energies_(k) * t));
  return std::norm(a);
}

double FidelityEvaluator::derivative(double t) const {
  Complex a{0.0, 0.0};
  Complex da{0.0, 0.0};
  for (Eigen::Index k = 0; k < energies_.size(); ++k) {
    const Complex e = weights_(k) * std::exp(-kI * (energies_(k) * t));
    a += e;
    da += -kI * energies_(k) * e;
  }
  return 2.0 * (std::conj(a) * da).real();
}

double fidelity_at(const HermitianOperator& h, const StateVector& psi, double t) {
  return FidelityEvaluator(h, psi).value(t);
}

double default_t_max(const HermitianOperator& h) {
  const double gap = h.min_nonzero_gap();
  return gap > 0.0 ? 4.0 * kPi / gap : 4.0 * kPi;
}

namespace {

// Shrinks [lo, hi] with pred(lo) false and pred(hi) true until no double
// lies strictly between them.
template <class Pred>
std::pair<double, double> bisect(double lo, double hi, Pred pred) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

}  // namespace

PassageResult first_passage_time(const HermitianOperator& h, const StateVector& psi, double delta,
                                 double t_max, int n_scan, double tol, bool keep_trace) {
  if (!(delta >= 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1)");
  if (!(t_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  if (n_scan < 100) throw Error(ErrorCode::InvalidArgument, "n_scan must be at least 100");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  const FidelityEvaluator fe(h, psi);
  PassageResult out;
  out.target_delta = delta;
  if (keep_trace) out.fidelity_trace.reserve(static_cast<std::size_t>(n_scan));

  const double step = t_max / (n_scan - 1);
  auto node = [&](int i) { return i == n_scan - 1 ? t_max : step * i; };
  auto below = [&](double t) { return fe.value(t) <= delta; };

  double t_prev = 0.0;
  double d_prev = fe.derivative(0.0);
  if (keep_trace) out.fidelity_trace.emplace_back(0.0, fe.value(0.0));

  for (int i = 1; i < n_scan; ++i) {
    const double t = node(i);
    const double f = fe.value(t);
    const double d = fe.derivative(t);
    if (keep_trace) out.fidelity_trace.emplace_back(t, f);

    if (f <= delta) {
      out.bracket = bisect(t_prev, t, below);
      out.time = out.bracket.second;
      return out;
    }
    if (d_prev <= 0.0 && d >= 0.0 && (d_prev < 0.0 || d > 0.0)) {
      const auto [m_lo, m_hi] = bisect(t_prev, t, [&](double s) { return fe.derivative(s) >= 0.0; });
      const double tm = fe.value(m_lo) <= fe.value(m_hi) ? m_lo : m_hi;
      const double fm = fe.value(tm);
      if (fm <= delta) {
        out.bracket = bisect(t_prev, tm, below);
        out.time = out.bracket.second;
        return out;
      }
      if (fm - delta <= tol) {
        out.bracket = {m_lo, m_hi};
        out.time = tm;
        return out;
      }
    }
    t_prev = t;
    d_prev = d;
  }
  out.bracket = {t_max, t_max};
  return out;
}

bool VerificationReport::all_satisfied() const {
  for (const auto& c : checks) {
    if (!c.satisfied) return false;
  }
  return true;
}

const BoundCheck& VerificationReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "no bound named '" + name + "'");
}

VerificationReport verify_bounds(const HermitianOperator& h, const StateVector& psi, double delta,
                                 double t_max, int n_scan) {
  VerificationReport r;
  r.delta = delta;
  r.t_max = t_max;
  r.bounds = bound_report(delta, energy_stats(h, psi));
  r.time = first_passage_time(h, psi, delta, t_max, n_scan, kDefaultPassageTol, false).time;

  const std::pair<const char*, double> named[] = {
      {"mt", r.bounds.tau_mt}, {"ml", r.bounds.tau_ml}, {"ml_dual", r.bounds.tau_ml_dual},
      {"max", r.bounds.tau_max}, {"tau1", r.bounds.tau1}, {"tau2", r.bounds.tau2},
      {"tau3", r.bounds.tau3}};
  for (const auto& [name, bound] : named) {
    BoundCheck c;
    c.name = name;
    c.bound = bound;
    if (r.time) {
      c.satisfied = *r.time >= bound * (1.0 - kBoundSlack);
      c.saturated = std::abs(*r.time - bound) < kSaturationTol * bound;
    }
    r.checks.push_back(c);
  }
  return r;
}

}  // namespace qsl
