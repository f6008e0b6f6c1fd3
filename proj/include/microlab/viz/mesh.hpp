#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "microlab/arena/grid.hpp"

namespace microlab {

enum class MeshMode { Flat2D, Height3D };

[[nodiscard]] const char* mesh_mode_name(MeshMode mode);  // "2d" / "3d"
/// Accepts "2d"/"flat" and "3d"/"height" (case-insensitive).
[[nodiscard]] std::optional<MeshMode> parse_mesh_mode(std::string_view text);

inline constexpr double kDefaultHeightScale = 0.15;

class EmptyMatrixError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Grid-aligned triangle mesh over a concentration matrix. Node (row, col) sits at
/// x = col / (w - 1), y = row / (h - 1) in dish units (0.5 on a degenerate axis).
struct HeatmapMesh {
  std::size_t width = 0;
  std::size_t height = 0;
  MeshMode mode = MeshMode::Flat2D;
  std::vector<std::array<double, 3>> vertices;      // row-major, one per grid node
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<double> scalar;                       // mM, copied from the matrix
  double range_min = 0.0;  // normalization range used for heights
  double range_max = 0.0;

  friend bool operator==(const HeatmapMesh&, const HeatmapMesh&) = default;
};

/// `range` overrides the matrix's own min/max for height normalization (used to
/// keep heights comparable across time steps). Height3D z = scale * (c - min) /
/// (max - min), clamped to [0, scale]; 0 when max == min.
[[nodiscard]] HeatmapMesh build_heatmap_mesh(const ConcentrationGrid& matrix, MeshMode mode,
                                             double height_scale = kDefaultHeightScale,
                                             std::optional<std::pair<double, double>> range = {});

/// Same as build_heatmap_mesh, reusing `mesh`'s storage.
void build_heatmap_mesh_into(HeatmapMesh& mesh, const ConcentrationGrid& matrix, MeshMode mode,
                             double height_scale = kDefaultHeightScale,
                             std::optional<std::pair<double, double>> range = {});

}  // namespace microlab
