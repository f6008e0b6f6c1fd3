#pragma once

#include <cstddef>
#include <vector>

#include "microlab/metabolic/model.hpp"

namespace microlab {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

/// Raised when the simplex hits its pivot limit.
class NumericalFailure : public ModelError {
public:
  using ModelError::ModelError;
};

/// maximize objective.x  subject to  a.x = rhs,  lower <= x <= upper.
/// Bounds may be infinite.
struct LinearProgram {
  StoichiometricMatrix a;
  std::vector<double> rhs;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct SimplexOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  /// Pivot limit is pivot_limit_factor * (rows + columns).
  std::size_t pivot_limit_factor = 100;
};

struct LpResult {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

/// Bounded-variable primal simplex on a dense tableau. Phase 1 drives one artificial
/// per row to zero; both phases use Bland's rule for entering and leaving variables,
/// so results are deterministic for a fixed input.
[[nodiscard]] LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace microlab
