// io.hpp — parameter files, manifests, and CSV/JSON output

#pragma once

#include "flr4/grid.hpp"
#include "flr4/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace flr4::io {

inline constexpr std::string_view kToolName = "flr4";
inline constexpr std::string_view kToolVersion = "1.0.0";

// Parameter file keys: omega, delta, gamma_level [G2,G3,G4],
// gamma_branch [g23,g34,g24], mu, allow_open_system. Missing keys keep the
// SystemParams defaults; unknown keys are rejected with Error{ConfigError}.
SystemParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const SystemParams& p);
SystemParams load_params(const std::filesystem::path& path);

nlohmann::json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const nlohmann::json& j);

// 17 significant digits, '.' decimal separator, round-trips exactly.
std::string format_number(double x);

// Single-line JSON with sorted keys.
std::string dump_line(const nlohmann::json& j);

// Writes to a sibling temporary file and renames it over `path`.
// Throws Error{IoError}.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

} // namespace flr4::io
