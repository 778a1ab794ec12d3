#include "qsl/saturators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qsl/alpha.hpp"

namespace qsl {

namespace {

void check_gap(double eps0, double eps1) {
  if (!(eps1 > eps0)) throw Error(ErrorCode::DegenerateGap, "need eps1 > eps0");
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1]");
}

HermitianOperator padded_hamiltonian(double eps0, double eps1, Eigen::Index dim) {
  if (dim < 2) throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2");
  std::vector<double> levels{eps0, eps1};
  for (Eigen::Index k = 0; k < dim - 2; ++k) {
    levels.push_back(eps0 + (eps1 - eps0) * static_cast<double>(k + 1) / static_cast<double>(dim - 1));
  }
  // Diagonal in the computational basis, so basis vectors 0 and 1 carry
  // eps0 and eps1 regardless of the sorted eigen-index order.
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) m(k, k) = levels[static_cast<std::size_t>(k)];
  return HermitianOperator(m);
}

StateVector two_level_state(Eigen::Index dim, double z) {
  const double c = std::sqrt(std::clamp(0.5 * (1.0 - z), 0.0, 1.0));
  const double s = std::sqrt(std::clamp(0.5 * (1.0 + z), 0.0, 1.0));
  CVector v = CVector::Zero(dim);
  v(0) = c;
  v(1) = s;
  return make_state(v);
}

SaturatingSystem build(SaturatorKind kind, double delta, double eps0, double eps1, Eigen::Index dim) {
  check_gap(eps0, eps1);
  check_delta(delta);
  double z = 0.0;
  switch (kind) {
    case SaturatorKind::ML: z = alpha(delta).z_star; break;
    case SaturatorKind::ML_DUAL: z = -alpha(delta).z_star; break;
    case SaturatorKind::MT: z = 0.0; break;
  }
  // At delta = 1 the ML minimizer degenerates to the ground state itself;
  // keep an equal superposition instead so the state still evolves.
  if (delta == 1.0) z = 0.0;
  SaturatingSystem sys{padded_hamiltonian(eps0, eps1, dim), two_level_state(dim, z), delta, 0.0, kind, {0, dim - 1}};
  sys.predicted_time = delta == 1.0 ? 0.0 : arrival_time(delta, z, eps0, eps1);
  return sys;
}

}  // namespace

double BlochVector3::norm() const { return std::sqrt(dot(*this)); }

std::string_view to_string(SaturatorKind kind) {
  switch (kind) {
    case SaturatorKind::ML: return "ml";
    case SaturatorKind::ML_DUAL: return "dual";
    case SaturatorKind::MT: return "mt";
  }
  return "ml";
}

SaturatorKind saturator_kind_from_string(std::string_view name) {
  if (name == "ml") return SaturatorKind::ML;
  if (name == "dual") return SaturatorKind::ML_DUAL;
  if (name == "mt") return SaturatorKind::MT;
  throw Error(ErrorCode::InvalidArgument, "unknown saturator kind '" + std::string(name) + "'");
}

BlochVector3 bloch_from_state(const PureState& rho, const StateVector& level0, const StateVector& level1) {
  require_same_dim(rho.dim(), level0.dim(), "bloch_from_state");
  require_same_dim(rho.dim(), level1.dim(), "bloch_from_state");
  const CVector& e0 = level0.amplitudes();
  const CVector& e1 = level1.amplitudes();
  if (std::abs(e0.dot(e1)) > 1e-10) throw Error(ErrorCode::InvalidArgument, "levels must be orthogonal");
  const CMatrix& p = rho.projector();
  const Complex p00 = e0.dot(p * e0);
  const Complex p11 = e1.dot(p * e1);
  const Complex p01 = e0.dot(p * e1);
  const Complex p10 = e1.dot(p * e0);
  if (p00.real() + p11.real() < 1.0 - 1e-10) {
    throw Error(ErrorCode::NotEffectiveQubit, "state has support outside the two-level span");
  }
  BlochVector3 b;
  b.x = (p10 + p01).real();
  b.y = (kI * (p10 - p01)).real();
  b.z = 1.0 - 2.0 * p00.real();
  return b;
}

double z_from_energy(double normalized_mean, double eps0, double eps1) {
  check_gap(eps0, eps1);
  return 2.0 * normalized_mean / (eps1 - eps0) - 1.0;
}

double arrival_time(double delta, double z, double eps0, double eps1) {
  check_gap(eps0, eps1);
  check_delta(delta);
  if (delta == 1.0) return 0.0;
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::Unreachable, "a pole state never changes");
  if (z * z > delta + 1e-14) throw Error(ErrorCode::Unreachable, "z^2 exceeds delta");
  const double arg = std::clamp((2.0 * delta - 1.0 - z * z) / (1.0 - z * z), -1.0, 1.0);
  return std::acos(arg) / (eps1 - eps0);
}

StateVector effective_qubit_state(const HermitianOperator& h, Eigen::Index lo, Eigen::Index hi, double z) {
  if (lo == hi || lo < 0 || hi < 0 || lo >= h.dim() || hi >= h.dim()) {
    throw Error(ErrorCode::InvalidArgument, "invalid level pair");
  }
  const double c = std::sqrt(std::clamp(0.5 * (1.0 - z), 0.0, 1.0));
  const double s = std::sqrt(std::clamp(0.5 * (1.0 + z), 0.0, 1.0));
  return make_state(CVector(c * h.eigenvectors().col(lo) + s * h.eigenvectors().col(hi)));
}

SaturatingSystem ml_saturating_system(double delta, double eps0, double eps1, Eigen::Index dim) {
  return build(SaturatorKind::ML, delta, eps0, eps1, dim);
}

SaturatingSystem dual_saturating_system(double delta, double eps0, double eps1, Eigen::Index dim) {
  return build(SaturatorKind::ML_DUAL, delta, eps0, eps1, dim);
}

SaturatingSystem mt_saturating_system(double delta, double eps0, double eps1, Eigen::Index dim) {
  return build(SaturatorKind::MT, delta, eps0, eps1, dim);
}

SaturatingSystem make_saturating_system(SaturatorKind kind, double delta, double eps0, double eps1,
                                        Eigen::Index dim) {
  return build(kind, delta, eps0, eps1, dim);
}

SaturatingSystem ml_saturating_on_levels(const HermitianOperator& h, Eigen::Index lo, Eigen::Index hi,
                                         double delta) {
  check_delta(delta);
  const double e_lo = h.eigenvalues()(lo);
  const double e_hi = h.eigenvalues()(hi);
  check_gap(e_lo, e_hi);
  const double z = delta == 1.0 ? 0.0 : alpha(delta).z_star;
  SaturatingSystem sys{h, effective_qubit_state(h, lo, hi, z), delta, 0.0, SaturatorKind::ML, {lo, hi}};
  sys.predicted_time = delta == 1.0 ? 0.0 : arrival_time(delta, z, e_lo, e_hi);
  return sys;
}

}  // namespace qsl
