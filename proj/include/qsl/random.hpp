#pragma once

#include <cstdint>
#include <random>

#include "qsl/core_quantum.hpp"

namespace qsl {

/// SplitMix64 finalizer. Used as a counter-based splitter: the seed for
/// stream k of a run is derive_seed(master, k), independent of how the
/// streams are scheduled.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

/// Haar-random unit vector (normalized complex Gaussian).
StateVector haar_state(Eigen::Index n, Rng& rng);

/// Haar-random unitary via QR of a complex Ginibre matrix with the phase
/// correction on the diagonal of R.
CMatrix haar_unitary(Eigen::Index n, Rng& rng);

/// Hamiltonian with eigenvalues uniform in [lo, hi] and Haar-random
/// eigenvectors.
HermitianOperator random_hamiltonian(Eigen::Index n, double lo, double hi, Rng& rng);

}  // namespace qsl
