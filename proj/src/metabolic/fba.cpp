#include "microlab/metabolic/fba.hpp"

#include <algorithm>
#include <cmath>

namespace microlab {

FluxSolution solve_fba(const MetabolicModel& model, const BoundOverrides& overrides) {
  const auto& reactions = model.reactions();
  LinearProgram lp;
  lp.a = stoichiometric_matrix(model);
  lp.rhs.assign(model.metabolites().size(), 0.0);
  lp.objective.reserve(reactions.size());
  lp.lower.reserve(reactions.size());
  lp.upper.reserve(reactions.size());
  for (const auto& r : reactions) {
    lp.objective.push_back(r.objective_coefficient);
    lp.lower.push_back(r.lower_bound);
    lp.upper.push_back(r.upper_bound);
  }
  for (const auto& [id, bounds] : overrides) {
    const auto j = model.reaction_index(id);
    if (!j) throw ModelError("bound override for unknown reaction '" + id + "'");
    if (std::isnan(bounds.lower) || std::isnan(bounds.upper) || bounds.lower > bounds.upper) {
      throw ModelError("bound override for '" + id + "' has lower > upper");
    }
    lp.lower[*j] = bounds.lower;
    lp.upper[*j] = bounds.upper;
  }

  const LpResult lp_result = solve_lp(lp);
  FluxSolution solution;
  solution.status = lp_result.status;
  if (lp_result.status == SolveStatus::Optimal) {
    solution.objective = lp_result.objective;
    solution.fluxes = lp_result.x;
  }
  return solution;
}

double steady_state_residual(const MetabolicModel& model, const std::vector<double>& fluxes) {
  const auto s = stoichiometric_matrix(model);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < s.cols(); ++j) row += s(i, j) * fluxes.at(j);
    worst = std::max(worst, std::abs(row));
  }
  return worst;
}

double monod_bound(const UptakeKinetics& kinetics, double concentration) {
  if (concentration < 0.0 || std::isnan(concentration)) {
    throw NegativeConcentrationError("Monod uptake needs a nonnegative concentration, got " +
                                     std::to_string(concentration));
  }
  if (kinetics.vmax < 0.0 || !(kinetics.km > 0.0)) {
    throw ModelError("uptake kinetics need vmax >= 0 and km > 0");
  }
  if (std::isinf(concentration)) return kinetics.vmax;
  // Saturation fraction first: c == km gives exactly vmax / 2.
  return kinetics.vmax * (concentration / (kinetics.km + concentration));
}

}  // namespace microlab
