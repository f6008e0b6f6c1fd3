#include <algorithm>
#include <cmath>

#include "microlab/arena/arena.hpp"

namespace microlab {

MetabolismResult agent_metabolism(const Agent& agent, const SpeciesSpec& species,
                                  const std::map<std::string, double>& local, double dt,
                                  const PhysicalParams& physical) {
  if (!(dt > 0.0)) throw SimulationError("metabolism step needs dt > 0");
  const auto& model = species.model;

  BoundOverrides overrides;
  for (std::size_t j : model.exchange_reactions()) {
    const auto& reaction = model.reactions()[j];
    const std::string& substance = model.exchanged_metabolite(j).label();
    const auto conc = local.find(substance);
    if (conc != local.end() && conc->second < 0.0) {
      throw SimulationError("negative concentration of '" + substance + "'");
    }
    const double available = conc == local.end() ? 0.0 : conc->second;
    double lower = reaction.lower_bound;
    if (auto kin = species.kinetics.find(reaction.id); kin != species.kinetics.end()) {
      lower = -monod_bound(kin->second, available);
    } else if (available <= 0.0) {
      lower = std::max(lower, 0.0);
    }
    const double upper = std::max(reaction.upper_bound, lower);
    overrides[reaction.id] = FluxBounds{lower, upper};
  }

  MetabolismResult result;
  FluxSolution solution = solve_fba(model, overrides);
  result.status = solution.status;
  if (solution.status == SolveStatus::Unbounded) {
    throw SimulationError("FBA of '" + species.name + "' is unbounded");
  }

  std::vector<double> fluxes = solution.status == SolveStatus::Optimal
                                   ? std::move(solution.fluxes)
                                   : std::vector<double>(model.reactions().size(), 0.0);
  double mu = solution.status == SolveStatus::Optimal ? solution.objective : 0.0;

  const double biomass_gdw = agent.biomass * physical.gdw_per_fg;
  const double to_mm = biomass_gdw * dt / physical.cell_volume_l;

  std::map<std::string, double> net;
  for (std::size_t j : model.exchange_reactions()) {
    // Exchanges are written {met: -1}, so a negative flux is uptake.
    const double coef = model.reactions()[j].stoichiometry.begin()->second;
    net[model.exchanged_metabolite(j).label()] += -coef * fluxes[j];
  }

  // Rescale the whole flux vector if any uptake would overdraw the local pool.
  double factor = 1.0;
  for (const auto& [substance, rate] : net) {
    const double delta = rate * to_mm;
    if (delta >= 0.0) continue;
    const auto conc = local.find(substance);
    const double available = conc == local.end() ? 0.0 : conc->second;
    if (available + delta < 0.0) factor = std::min(factor, available / -delta);
  }
  factor = std::max(factor, 0.0);
  result.clamp_factor = factor;

  for (auto& [substance, rate] : net) {
    rate *= factor;
    if (rate == 0.0) rate = 0.0;  // drop negative zero
    result.fluxes[substance] = rate;
    if (local.contains(substance)) result.deltas[substance] = rate * to_mm;
  }
  mu *= factor;
  result.growth_rate = mu;
  result.new_biomass = agent.biomass * std::exp(mu * dt);
  return result;
}

}  // namespace microlab
