#pragma once

#include <array>
#include <string_view>

#include "qsl/core_quantum.hpp"

namespace qsl {

struct BlochVector3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const BlochVector3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
};

enum class SaturatorKind { ML, ML_DUAL, MT };

std::string_view to_string(SaturatorKind kind);
SaturatorKind saturator_kind_from_string(std::string_view name);

/// A Hamiltonian, an initial state supported on two of its eigenvectors, and
/// the time at which the state is predicted to first reach the target
/// fidelity (saturating the bound named by `kind`).
struct SaturatingSystem {
  HermitianOperator hamiltonian;
  StateVector state;
  double delta = 0.0;
  double predicted_time = 0.0;
  SaturatorKind kind = SaturatorKind::ML;
  std::array<Eigen::Index, 2> embedding{0, 1};
};

/// Bloch coordinates of a state supported on span{level0, level1}:
/// x = <1|r|0> + <0|r|1>, y = i(<1|r|0> - <0|r|1>), z = 1 - 2<0|r|0>.
BlochVector3 bloch_from_state(const PureState& rho, const StateVector& level0, const StateVector& level1);

/// Bloch height fixed by the normalized expected energy of an effective
/// qubit on levels eps0 < eps1.
double z_from_energy(double normalized_mean, double eps0, double eps1);

/// First time a qubit at Bloch height z, rotating at angular speed
/// eps1 - eps0, reaches fidelity delta with its initial state.
double arrival_time(double delta, double z, double eps0, double eps1);

/// cos r |lo> + sin r |hi> with z = 1 - 2 cos^2 r, for eigen-indices lo, hi of h.
StateVector effective_qubit_state(const HermitianOperator& h, Eigen::Index lo, Eigen::Index hi, double z);

/// Saturators on H = diag(eps0, eps1, pad...), where the n - 2 padding
/// levels sit strictly between eps0 and eps1.
SaturatingSystem ml_saturating_system(double delta, double eps0, double eps1, Eigen::Index dim = 2);
SaturatingSystem dual_saturating_system(double delta, double eps0, double eps1, Eigen::Index dim = 2);
SaturatingSystem mt_saturating_system(double delta, double eps0, double eps1, Eigen::Index dim = 2);

SaturatingSystem make_saturating_system(SaturatorKind kind, double delta, double eps0, double eps1,
                                        Eigen::Index dim = 2);

/// ML saturator on an existing Hamiltonian, using eigen-levels lo (taken as
/// the reference ground level) and hi.
SaturatingSystem ml_saturating_on_levels(const HermitianOperator& h, Eigen::Index lo, Eigen::Index hi,
                                         double delta);

}  // namespace qsl
