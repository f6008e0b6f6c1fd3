#pragma once

#include <string>

#include <json.hpp>

#include "microlab/viz/frame.hpp"

namespace microlab {

// JSON wire form consumed by the browser explorer. Schemas live in docs/schema/.

[[nodiscard]] nlohmann::json mesh_to_json(const HeatmapMesh& mesh);
[[nodiscard]] nlohmann::json glyph_to_json(const OrganismGlyph& glyph);
[[nodiscard]] nlohmann::json frame_to_json(const Frame& frame);
[[nodiscard]] nlohmann::json schemes_to_json();
/// Everything a client needs to build its controls: times, substances, flux column
/// names, species, dims, per-substance extremes, colour schemes.
[[nodiscard]] nlohmann::json metadata_to_json(const IndexedDataset& data);

[[nodiscard]] std::string serialize_frame(const Frame& frame);
[[nodiscard]] std::string serialize_mesh(const HeatmapMesh& mesh);

}  // namespace microlab
