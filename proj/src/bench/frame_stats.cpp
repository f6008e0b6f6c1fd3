#include "microlab/bench/frame_stats.hpp"

#include <cmath>

namespace microlab {

FrameStats fps_from_durations(std::span<const double> durations) {
  if (durations.empty()) throw EmptyInputError("no frame durations");
  FrameStats stats;
  stats.durations.assign(durations.begin(), durations.end());
  // Kahan summation keeps the mean exact for long runs of equal durations.
  double sum = 0.0;
  double carry = 0.0;
  for (double d : durations) {
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("frame duration must be > 0");
    const double y = d - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  stats.mean = sum / static_cast<double>(durations.size());
  stats.fps = 1.0 / stats.mean;
  return stats;
}

}  // namespace microlab
