#include "qsl/system_io.hpp"

#include <fstream>

namespace qsl {

namespace {

nlohmann::ordered_json complex_pair(Complex z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

Complex parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::ParseError, "complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

SystemDescription describe(const SaturatingSystem& sys) {
  SystemDescription d{sys.hamiltonian, sys.state, sys.delta, sys.predicted_time, std::string(to_string(sys.kind)),
                      sys.embedding};
  return d;
}

nlohmann::ordered_json to_json(const SystemDescription& sys) {
  nlohmann::ordered_json j;
  const Eigen::Index n = sys.hamiltonian.dim();
  j["dimension"] = n;
  auto h = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) h.push_back(complex_pair(sys.hamiltonian.matrix()(r, c)));
  }
  j["hamiltonian"] = std::move(h);
  auto s = nlohmann::ordered_json::array();
  for (Eigen::Index k = 0; k < n; ++k) s.push_back(complex_pair(sys.state[k]));
  j["state"] = std::move(s);
  if (sys.kind) j["kind"] = *sys.kind;
  if (sys.delta) j["delta"] = *sys.delta;
  if (sys.predicted_time) j["predicted_time"] = *sys.predicted_time;
  if (sys.embedding) j["embedding"] = {(*sys.embedding)[0], (*sys.embedding)[1]};
  return j;
}

SystemDescription system_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "system must be a JSON object");
  for (const char* key : {"dimension", "hamiltonian", "state"}) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  }
  if (!j["dimension"].is_number_integer()) throw Error(ErrorCode::ParseError, "dimension must be an integer");
  const auto n = j["dimension"].get<Eigen::Index>();
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2");
  const auto& h = j["hamiltonian"];
  const auto& s = j["state"];
  if (!h.is_array() || static_cast<Eigen::Index>(h.size()) != n * n) {
    throw Error(ErrorCode::ParseError, "hamiltonian must list dimension^2 entries");
  }
  if (!s.is_array() || static_cast<Eigen::Index>(s.size()) != n) {
    throw Error(ErrorCode::ParseError, "state must list dimension entries");
  }
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = parse_complex(h[static_cast<std::size_t>(r * n + c)]);
  }
  CVector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = parse_complex(s[static_cast<std::size_t>(k)]);

  SystemDescription d{HermitianOperator(m), make_state(v), std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  try {
    if (j.contains("delta")) d.delta = j["delta"].get<double>();
    if (j.contains("predicted_time")) d.predicted_time = j["predicted_time"].get<double>();
    if (j.contains("kind")) d.kind = j["kind"].get<std::string>();
    if (j.contains("embedding")) {
      const auto& e = j["embedding"];
      d.embedding = std::array<Eigen::Index, 2>{e.at(0).get<Eigen::Index>(), e.at(1).get<Eigen::Index>()};
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
  return d;
}

SystemDescription read_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return system_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qsl
