#pragma once

#include <map>
#include <string>
#include <vector>

#include "microlab/metabolic/model.hpp"
#include "microlab/metabolic/simplex.hpp"

namespace microlab {

struct FluxSolution {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  /// Aligned with model.reactions(), mmol/(gDW*h). Empty unless Optimal.
  std::vector<double> fluxes;
};

struct FluxBounds {
  double lower = 0.0;
  double upper = 0.0;
};

using BoundOverrides = std::map<std::string, FluxBounds>;

/// Flux balance analysis: maximize the model objective subject to S.v = 0 and the
/// reaction bounds, with `overrides` replacing bounds of the named reactions.
/// Infeasible and unbounded problems are reported through the status; a pivot-limit
/// breach throws NumericalFailure. Unknown override ids throw ModelError.
[[nodiscard]] FluxSolution solve_fba(const MetabolicModel& model,
                                     const BoundOverrides& overrides = {});

/// Largest |(S.v)_i| over all metabolites.
[[nodiscard]] double steady_state_residual(const MetabolicModel& model,
                                           const std::vector<double>& fluxes);

class NegativeConcentrationError : public ModelError {
public:
  using ModelError::ModelError;
};

struct UptakeKinetics {
  double vmax = 0.0;  // mmol/(gDW*h)
  double km = 1.0;    // mM
};

/// Monod-limited uptake capacity vmax*c/(km + c). Throws NegativeConcentrationError for c < 0.
[[nodiscard]] double monod_bound(const UptakeKinetics& kinetics, double concentration);

}  // namespace microlab
