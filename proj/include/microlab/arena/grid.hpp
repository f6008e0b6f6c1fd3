#pragma once

#include <cstddef>
#include <vector>

namespace microlab {

/// Row-major height x width matrix of concentrations (mM). Indices are 0-based;
/// grid point (x, y) in 1-based arena coordinates lives at at(y - 1, x - 1).
class ConcentrationGrid {
public:
  ConcentrationGrid() = default;
  ConcentrationGrid(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), values_(width * height, fill) {}

  [[nodiscard]] std::size_t width() const { return width_; }
  [[nodiscard]] std::size_t height() const { return height_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  double& at(std::size_t row, std::size_t col) { return values_[row * width_ + col]; }
  [[nodiscard]] double at(std::size_t row, std::size_t col) const {
    return values_[row * width_ + col];
  }

  [[nodiscard]] std::vector<double>& values() { return values_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

  [[nodiscard]] double sum() const;
  [[nodiscard]] double min() const;
  [[nodiscard]] double max() const;

  friend bool operator==(const ConcentrationGrid&, const ConcentrationGrid&) = default;

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> values_;
};

}  // namespace microlab
