#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "microlab/arena/grid.hpp"
#include "microlab/viz/color.hpp"

namespace microlab {

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  [[nodiscard]] Rgb pixel(std::size_t x, std::size_t y) const {
    const std::size_t i = 3 * (y * width + x);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
};

inline constexpr std::size_t kDefaultPixelScale = 16;

/// Each grid cell becomes a scale x scale block; matrix row 1 is the top edge.
[[nodiscard]] Image render_heatmap(const ConcentrationGrid& matrix, double min, double max,
                                   const ColorScheme& scheme, std::size_t scale = kDefaultPixelScale);

void write_png(const Image& image, const std::filesystem::path& path);
[[nodiscard]] Image read_png(const std::filesystem::path& path);

}  // namespace microlab
