#include "eitmw/params_io.hpp"

#include <array>
#include <fstream>
#include <string_view>

namespace eitmw {
namespace {

constexpr std::array<std::string_view, 9> kParamKeys = {
    "g", "G", "omega", "phi", "delta1", "delta2", "gamma1", "gamma2", "kappa"};

constexpr std::array<std::string_view, 5> kToleranceKeys = {
    "hermiticity_tol", "trace_tol", "psd_tol", "dark_amp_tol", "residual_tol"};

double* param_field(SystemParams& p, std::string_view key) {
  if (key == "g") return &p.g;
  if (key == "G") return &p.G;
  if (key == "omega") return &p.omega;
  if (key == "phi") return &p.phi;
  if (key == "delta1") return &p.delta1;
  if (key == "delta2") return &p.delta2;
  if (key == "gamma1") return &p.gamma1;
  if (key == "gamma2") return &p.gamma2;
  if (key == "kappa") return &p.kappa;
  return nullptr;
}

double* tolerance_field(ToleranceConfig& t, std::string_view key) {
  if (key == "hermiticity_tol") return &t.hermiticity_tol;
  if (key == "trace_tol") return &t.trace_tol;
  if (key == "psd_tol") return &t.psd_tol;
  if (key == "dark_amp_tol") return &t.dark_amp_tol;
  if (key == "residual_tol") return &t.residual_tol;
  return nullptr;
}

}  // namespace

nlohmann::json params_to_json(const SystemParams& p) {
  nlohmann::json j = nlohmann::json::object();
  SystemParams copy = p;
  for (auto key : kParamKeys) j[std::string(key)] = *param_field(copy, key);
  return j;
}

SystemParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "parameters must be a JSON object");
  SystemParams p;
  for (const auto& [key, value] : j.items()) {
    double* field = param_field(p, key);
    if (field == nullptr) throw Error(ErrorCode::InvalidSpec, "unknown parameter key '" + key + "'");
    if (!value.is_number()) {
      throw Error(ErrorCode::InvalidSpec, "parameter '" + key + "' must be a number");
    }
    *field = value.get<double>();
  }
  for (auto key : kParamKeys) {
    if (!j.contains(std::string(key))) {
      throw Error(ErrorCode::InvalidSpec, "missing parameter key '" + std::string(key) + "'");
    }
  }
  return p;
}

nlohmann::json tolerances_to_json(const ToleranceConfig& tol) {
  nlohmann::json j = nlohmann::json::object();
  ToleranceConfig copy = tol;
  for (auto key : kToleranceKeys) j[std::string(key)] = *tolerance_field(copy, key);
  return j;
}

ToleranceConfig tolerances_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "tolerances must be a JSON object");
  ToleranceConfig tol;
  for (const auto& [key, value] : j.items()) {
    double* field = tolerance_field(tol, key);
    if (field == nullptr) throw Error(ErrorCode::InvalidSpec, "unknown tolerance key '" + key + "'");
    if (!value.is_number()) {
      throw Error(ErrorCode::InvalidSpec, "tolerance '" + key + "' must be a number");
    }
    *field = value.get<double>();
  }
  validate_tolerances(tol);
  return tol;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidSpec, "'" + path.string() + "': " + e.what());
  }
}

}  // namespace eitmw
