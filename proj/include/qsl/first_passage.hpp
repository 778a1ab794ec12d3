#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/core_quantum.hpp"

namespace qsl {

/// Survival amplitude A(t) = sum_k w_k e^{-i lambda_k t} with w_k = |<v_k|psi>|^2,
/// so F(t) = |A(t)|^2 costs O(n) per evaluation after setup.
class FidelityEvaluator {
 public:
  FidelityEvaluator(const HermitianOperator& h, const StateVector& psi);

  double value(double t) const;
  double derivative(double t) const;

 private:
  RVector energies_;
  RVector weights_;
};

double fidelity_at(const HermitianOperator& h, const StateVector& psi, double t);

/// 4 pi over the smallest nonzero gap of h (4 pi for a flat spectrum).
double default_t_max(const HermitianOperator& h);

inline constexpr int kDefaultScanPoints = 4096;
inline constexpr double kDefaultPassageTol = 1e-12;

struct PassageResult {
  double target_delta = 0.0;
  std::optional<double> time;
  std::vector<std::pair<double, double>> fidelity_trace;
  std::pair<double, double> bracket{0.0, 0.0};
};

/// Earliest t in [0, t_max] with F(t) <= delta. A uniform scan finds the
/// first sample interval containing a down-crossing; bisection then shrinks
/// that interval to adjacent doubles. Intervals where F dips back up without
/// a sampled crossing are searched for their minimum, which is accepted as a
/// tangential touch when it lies within tol of delta.
PassageResult first_passage_time(const HermitianOperator& h, const StateVector& psi, double delta,
                                 double t_max, int n_scan = kDefaultScanPoints,
                                 double tol = kDefaultPassageTol, bool keep_trace = true);

/// Relative slack used when comparing a measured time against a bound, so a
/// saturated bound (equal up to roundoff) still counts as satisfied.
inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kSaturationTol = 1e-6;

struct BoundCheck {
  std::string name;
  double bound = 0.0;
  bool satisfied = true;
  bool saturated = false;
};

struct VerificationReport {
  double delta = 0.0;
  double t_max = 0.0;
  std::optional<double> time;
  BoundReport bounds;
  std::vector<BoundCheck> checks;

  bool all_satisfied() const;
  const BoundCheck& check(const std::string& name) const;
};

/// First-passage time against every bound in bound_report. When the target is
/// never reached inside t_max every bound is vacuously satisfied and nothing
/// is saturated.
VerificationReport verify_bounds(const HermitianOperator& h, const StateVector& psi, double delta,
                                 double t_max, int n_scan = kDefaultScanPoints);

}  // namespace qsl
