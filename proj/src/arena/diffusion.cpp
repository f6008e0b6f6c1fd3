#include <cmath>
#include <sstream>

#include "microlab/arena/arena.hpp"

namespace microlab {

void diffuse_in_place(SubstanceField& field, double dt, std::vector<double>& scratch) {
  // Grid spacing is one cell, so the stencil weight is simply D * dt.
  const double r = field.diffusivity * dt;
  if (!(r >= 0.0) || r > 0.25) {
    std::ostringstream msg;
    msg << "diffusion of '" << field.name << "' is unstable: D*dt/dx^2 = " << r << " > 0.25";
    throw UnstableParametersError(msg.str());
  }
  auto& grid = field.concentrations;
  const std::size_t w = grid.width();
  const std::size_t h = grid.height();
  if (r == 0.0 || w * h == 0) return;

  const auto& c = grid.values();
  scratch.resize(c.size());
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t k = y * w + x;
      const double center = c[k];
      // Reflecting boundaries: missing neighbours contribute no flux.
      double exchange = 0.0;
      if (x > 0) exchange += c[k - 1] - center;
      if (x + 1 < w) exchange += c[k + 1] - center;
      if (y > 0) exchange += c[k - w] - center;
      if (y + 1 < h) exchange += c[k + w] - center;
      scratch[k] = center + r * exchange;
    }
  }
  grid.values().swap(scratch);
}

SubstanceField diffuse(const SubstanceField& field, double dt) {
  SubstanceField out = field;
  std::vector<double> scratch;
  diffuse_in_place(out, dt, scratch);
  return out;
}

}  // namespace microlab
