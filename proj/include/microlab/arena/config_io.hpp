#pragma once

#include <filesystem>

#include <json.hpp>

#include "microlab/arena/arena.hpp"

namespace microlab {

/// Simulation config document. Relative "model_file" paths resolve against `base_dir`.
/// The schema is documented in docs/formats.md.
[[nodiscard]] SimulationConfig config_from_json(const nlohmann::json& doc,
                                                const std::filesystem::path& base_dir = {});
[[nodiscard]] SimulationConfig load_config(const std::filesystem::path& path);

[[nodiscard]] nlohmann::json trace_to_json(const SimulationTrace& trace);
[[nodiscard]] SimulationTrace trace_from_json(const nlohmann::json& doc);
void save_trace(const SimulationTrace& trace, const std::filesystem::path& path);
[[nodiscard]] SimulationTrace load_trace(const std::filesystem::path& path);

}  // namespace microlab
