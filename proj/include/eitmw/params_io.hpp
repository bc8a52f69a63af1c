#pragma once

#include <filesystem>

#include <json.hpp>

#include "eitmw/model.hpp"

namespace eitmw {

/// Flat JSON object with the nine field names of SystemParams:
/// g, G, omega, phi, delta1, delta2, gamma1, gamma2, kappa.
nlohmann::json params_to_json(const SystemParams& p);

/// All nine keys are required; unknown keys and non-numeric values are
/// rejected with InvalidSpec. The result is not validated.
SystemParams params_from_json(const nlohmann::json& j);

/// Tolerance files may set any subset of the five tolerance keys.
nlohmann::json tolerances_to_json(const ToleranceConfig& tol);
ToleranceConfig tolerances_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file. Throws IoFailure if unreadable, InvalidSpec
/// on a parse error.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace eitmw
