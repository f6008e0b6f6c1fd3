#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace microlab {

class EmptyInputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct FrameStats {
  std::vector<double> durations;  // seconds
  double mean = 0.0;
  double fps = 0.0;  // 1 / mean
};

/// Frames per second as the reciprocal of the mean frame duration. Throws
/// EmptyInputError for no durations and std::invalid_argument for a duration <= 0.
[[nodiscard]] FrameStats fps_from_durations(std::span<const double> durations);

}  // namespace microlab
