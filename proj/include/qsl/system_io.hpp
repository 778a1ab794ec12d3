#pragma once

#include <array>
#include <optional>
#include <string>

#include <json.hpp>

#include "qsl/core_quantum.hpp"
#include "qsl/saturators.hpp"

namespace qsl {

/// A Hamiltonian and initial state as exchanged in JSON:
///   {"dimension": n, "hamiltonian": [[re, im], ...] (row-major, n*n),
///    "state": [[re, im], ...]}
/// plus optional saturator metadata.
struct SystemDescription {
  HermitianOperator hamiltonian;
  StateVector state;
  std::optional<double> delta;
  std::optional<double> predicted_time;
  std::optional<std::string> kind;
  std::optional<std::array<Eigen::Index, 2>> embedding;
};

SystemDescription describe(const SaturatingSystem& sys);

nlohmann::ordered_json to_json(const SystemDescription& sys);

/// Throws ParseError on malformed input, and the usual construction errors
/// for non-Hermitian matrices or zero states.
SystemDescription system_from_json(const nlohmann::json& j);

SystemDescription read_system(const std::string& path);
void write_json(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace qsl
