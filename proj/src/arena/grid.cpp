#include "microlab/arena/grid.hpp"

#include <algorithm>
#include <limits>

namespace microlab {

double ConcentrationGrid::sum() const {
  double total = 0.0;
  for (double v : values_) total += v;
  return total;
}

double ConcentrationGrid::min() const {
  if (values_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return *std::min_element(values_.begin(), values_.end());
}

double ConcentrationGrid::max() const {
  if (values_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return *std::max_element(values_.begin(), values_.end());
}

}  // namespace microlab
