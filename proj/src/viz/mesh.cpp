#include "microlab/viz/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace microlab {

const char* mesh_mode_name(MeshMode mode) {
  return mode == MeshMode::Flat2D ? "2d" : "3d";
}

std::optional<MeshMode> parse_mesh_mode(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "2d" || lower == "flat") return MeshMode::Flat2D;
  if (lower == "3d" || lower == "height") return MeshMode::Height3D;
  return std::nullopt;
}

void build_heatmap_mesh_into(HeatmapMesh& mesh, const ConcentrationGrid& matrix, MeshMode mode,
                             double height_scale, std::optional<std::pair<double, double>> range) {
  const std::size_t w = matrix.width();
  const std::size_t h = matrix.height();
  if (w == 0 || h == 0) throw EmptyMatrixError("heatmap matrix is empty");
  for (double v : matrix.values()) {
    if (!std::isfinite(v)) throw std::invalid_argument("heatmap matrix has a non-finite value");
  }

  const auto [lo, hi] = range ? *range : std::make_pair(matrix.min(), matrix.max());
  mesh.width = w;
  mesh.height = h;
  mesh.mode = mode;
  mesh.range_min = lo;
  mesh.range_max = hi;
  mesh.scalar.assign(matrix.values().begin(), matrix.values().end());

  mesh.vertices.resize(w * h);
  const double sx = w > 1 ? 1.0 / static_cast<double>(w - 1) : 0.0;
  const double sy = h > 1 ? 1.0 / static_cast<double>(h - 1) : 0.0;
  for (std::size_t row = 0; row < h; ++row) {
    for (std::size_t col = 0; col < w; ++col) {
      double z = 0.0;
      if (mode == MeshMode::Height3D && hi > lo) {
        const double t = std::clamp((matrix.at(row, col) - lo) / (hi - lo), 0.0, 1.0);
        z = height_scale * t;
      }
      mesh.vertices[row * w + col] = {w > 1 ? col * sx : 0.5, h > 1 ? row * sy : 0.5, z};
    }
  }

  mesh.triangles.clear();
  mesh.triangles.reserve(2 * (w - 1) * (h - 1));
  for (std::size_t row = 0; row + 1 < h; ++row) {
    for (std::size_t col = 0; col + 1 < w; ++col) {
      const auto a = static_cast<std::uint32_t>(row * w + col);
      const auto b = a + 1;
      const auto c = static_cast<std::uint32_t>(a + w);
      const auto d = c + 1;
      mesh.triangles.push_back({a, c, b});
      mesh.triangles.push_back({b, c, d});
    }
  }
}

HeatmapMesh build_heatmap_mesh(const ConcentrationGrid& matrix, MeshMode mode, double height_scale,
                               std::optional<std::pair<double, double>> range) {
  HeatmapMesh mesh;
  build_heatmap_mesh_into(mesh, matrix, mode, height_scale, range);
  return mesh;
}

}  // namespace microlab
