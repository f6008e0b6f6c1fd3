#include "microlab/arena/arena.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace microlab {

int PhenotypeRegistry::phenotype_of(const std::vector<int>& signs) {
  const int next = static_cast<int>(ids_.size()) + 1;
  return ids_.try_emplace(signs, next).first->second;
}

std::vector<int> flux_signs(const std::map<std::string, double>& fluxes,
                            const std::vector<std::string>& substances, double epsilon) {
  std::vector<int> signs;
  signs.reserve(substances.size());
  for (const auto& name : substances) {
    const auto it = fluxes.find(name);
    const double v = it == fluxes.end() ? 0.0 : it->second;
    signs.push_back(v > epsilon ? 1 : (v < -epsilon ? -1 : 0));
  }
  return signs;
}

std::vector<std::string> Arena::substance_names() const {
  std::vector<std::string> names;
  names.reserve(fields.size());
  for (const auto& f : fields) names.push_back(f.name);
  return names;
}

const SpeciesSpec& Arena::species_for(int genotype) const {
  if (!species || genotype < 1 || static_cast<std::size_t>(genotype) > species->size()) {
    throw SimulationError("no species with genotype " + std::to_string(genotype));
  }
  return (*species)[static_cast<std::size_t>(genotype - 1)];
}

const SubstanceField* Arena::field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return &f;
  return nullptr;
}

std::vector<std::string> SimulationTrace::substance_names() const {
  std::vector<std::string> names;
  if (snapshots.empty()) return names;
  for (const auto& f : snapshots.front().fields) names.push_back(f.name);
  return names;
}

namespace {

ConcentrationGrid initial_profile(const SubstanceInit& init, std::size_t w, std::size_t h) {
  ConcentrationGrid grid(w, h, init.initial);
  if (init.gradient_axis.empty()) return grid;
  const bool along_x = init.gradient_axis == "x";
  if (!along_x && init.gradient_axis != "y") {
    throw SimulationError("gradient axis of '" + init.name + "' must be \"x\" or \"y\"");
  }
  const std::size_t span = along_x ? w : h;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t pos = along_x ? x : y;
      const double f = span > 1 ? static_cast<double>(pos) / static_cast<double>(span - 1) : 0.0;
      grid.at(y, x) = init.initial + (init.gradient_to - init.initial) * f;
    }
  }
  return grid;
}

void assign_phenotypes(Arena& arena) {
  const auto names = arena.substance_names();
  for (auto& agent : arena.agents) {
    agent.phenotype = arena.phenotypes.phenotype_of(flux_signs(agent.last_fluxes, names));
  }
}

}  // namespace

Arena init_arena(const SimulationConfig& config, std::uint64_t seed) {
  if (config.width < 1 || config.height < 1) {
    throw BadDimensionsError("arena dimensions must be at least 1x1, got " +
                             std::to_string(config.width) + "x" + std::to_string(config.height));
  }
  const std::size_t cells = config.width * config.height;
  std::size_t total = 0;
  for (const auto& s : config.species) total += s.count;
  if (total > cells) {
    throw OverfullError("cannot place " + std::to_string(total) + " agents on " +
                        std::to_string(cells) + " cells");
  }
  if (!(config.initial_biomass > 0.0)) throw SimulationError("initial biomass must be > 0");

  Arena arena;
  arena.width = config.width;
  arena.height = config.height;
  arena.rng_seed = seed;
  arena.rng.seed(seed);
  arena.lifecycle = config.lifecycle;
  arena.physical = config.physical;
  arena.diffusion_substeps = std::max<std::size_t>(1, config.diffusion_substeps);

  std::set<std::string> seen;
  for (const auto& s : config.substances) {
    if (!seen.insert(s.name).second) throw SimulationError("duplicate substance '" + s.name + "'");
    if (s.initial < 0.0 || s.gradient_to < 0.0) {
      throw SimulationError("initial concentration of '" + s.name + "' is negative");
    }
    arena.fields.push_back({s.name, initial_profile(s, config.width, config.height), s.diffusivity});
  }

  auto catalog = std::make_shared<SpeciesCatalog>();
  for (std::size_t i = 0; i < config.species.size(); ++i) {
    SpeciesSpec spec = config.species[i].spec;
    spec.genotype = static_cast<int>(i) + 1;
    if (!is_genus_species_strain(spec.name)) {
      throw BadNameError("species name '" + spec.name + "' is not genus_species_strain");
    }
    for (const auto& [reaction, kin] : spec.kinetics) {
      const auto j = spec.model.reaction_index(reaction);
      if (!j || !spec.model.is_exchange(*j)) {
        throw SimulationError("kinetics key '" + reaction + "' of " + spec.name +
                              " is not an exchange reaction");
      }
      if (kin.vmax < 0.0 || !(kin.km > 0.0)) {
        throw SimulationError("kinetics of '" + reaction + "' need vmax >= 0 and km > 0");
      }
    }
    catalog->push_back(std::move(spec));
  }
  arena.species = catalog;

  // Partial Fisher-Yates over cell indices.
  std::vector<std::size_t> order(cells);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < total; ++i) {
    std::swap(order[i], order[i + uniform_index(arena.rng, cells - i)]);
  }
  std::size_t next = 0;
  for (std::size_t s = 0; s < config.species.size(); ++s) {
    for (std::size_t k = 0; k < config.species[s].count; ++k) {
      const std::size_t cell = order[next++];
      Agent agent;
      agent.x = static_cast<int>(cell % config.width) + 1;
      agent.y = static_cast<int>(cell / config.width) + 1;
      agent.genotype = static_cast<int>(s) + 1;
      agent.biomass = config.initial_biomass;
      arena.agents.push_back(std::move(agent));
    }
  }
  std::sort(arena.agents.begin(), arena.agents.end(), [](const Agent& a, const Agent& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  assign_phenotypes(arena);
  return arena;
}

StepReport step(Arena& arena, double dt) {
  if (!(dt > 0.0)) throw SimulationError("step needs dt > 0");
  StepReport report;
  report.agents_before = arena.agents.size();

  const auto names = arena.substance_names();
  std::map<std::string, double> local;
  for (auto& agent : arena.agents) {
    const std::size_t row = static_cast<std::size_t>(agent.y - 1);
    const std::size_t col = static_cast<std::size_t>(agent.x - 1);
    local.clear();
    for (const auto& f : arena.fields) local[f.name] = f.concentrations.at(row, col);

    const auto& species = arena.species_for(agent.genotype);
    MetabolismResult result = agent_metabolism(agent, species, local, dt, arena.physical);
    if (result.status == SolveStatus::Infeasible) ++report.infeasible_solves;
    if (result.clamp_factor < 1.0) ++report.clamped_uptakes;

    for (auto& f : arena.fields) {
      if (auto d = result.deltas.find(f.name); d != result.deltas.end()) {
        double& c = f.concentrations.at(row, col);
        c = std::max(0.0, c + d->second);
      }
    }
    agent.last_fluxes.clear();
    for (const auto& name : names) {
      const auto v = result.fluxes.find(name);
      agent.last_fluxes[name] = v == result.fluxes.end() ? 0.0 : v->second;
    }
    agent.biomass = result.new_biomass;
    agent.starvation_steps = result.growth_rate > 1e-12 ? 0 : agent.starvation_steps + 1;
  }

  report.lifecycle = apply_agent_lifecycle(arena);

  const double sub_dt = dt / static_cast<double>(arena.diffusion_substeps);
  std::vector<double> scratch;
  for (auto& f : arena.fields) {
    for (std::size_t k = 0; k < arena.diffusion_substeps; ++k) diffuse_in_place(f, sub_dt, scratch);
  }

  arena.time += dt;
  assign_phenotypes(arena);
  report.agents_after = arena.agents.size();
  return report;
}

namespace {

Snapshot snapshot_of(const Arena& arena, std::size_t index) {
  return Snapshot{index, arena.time, arena.agents, arena.fields};
}

}  // namespace

SimulationTrace run_simulation(const SimulationConfig& config, std::size_t n_steps) {
  if (n_steps == 0) throw SimulationError("run_simulation needs at least one step");
  Arena arena = init_arena(config, config.seed);
  SimulationTrace trace;
  trace.width = arena.width;
  trace.height = arena.height;
  trace.dt = config.dt;
  for (const auto& s : *arena.species) trace.species.push_back({s.genotype, s.name, s.color});
  trace.snapshots.reserve(n_steps + 1);
  trace.snapshots.push_back(snapshot_of(arena, 0));
  for (std::size_t k = 1; k <= n_steps; ++k) {
    step(arena, config.dt);
    // Time as step count times dt keeps the spacing exactly constant.
    arena.time = static_cast<double>(k) * config.dt;
    trace.snapshots.push_back(snapshot_of(arena, k));
  }
  return trace;
}

}  // namespace microlab
