#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "microlab/arena/grid.hpp"
#include "microlab/arena/random.hpp"
#include "microlab/metabolic/fba.hpp"

namespace microlab {

class SimulationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class OverfullError : public SimulationError {
public:
  using SimulationError::SimulationError;
};

class BadDimensionsError : public SimulationError {
public:
  using SimulationError::SimulationError;
};

class UnstableParametersError : public SimulationError {
public:
  using SimulationError::SimulationError;
};

struct SpeciesSpec {
  int genotype = 0;
  std::string name;  // genus_species_strain
  MetabolicModel model;
  /// Keyed by exchange reaction id.
  std::map<std::string, UptakeKinetics> kinetics;
  std::string color = "#FFFFFF";
};

struct Agent {
  int x = 1;  // 1-based column
  int y = 1;  // 1-based row
  int genotype = 0;
  double biomass = 0.0;  // fg
  int phenotype = 0;
  /// Net exchange flux per tracked substance, mmol/(gDW*h). Negative = uptake.
  std::map<std::string, double> last_fluxes;
  int starvation_steps = 0;

  friend bool operator==(const Agent&, const Agent&) = default;
};

struct SubstanceField {
  std::string name;
  ConcentrationGrid concentrations;
  double diffusivity = 0.0;  // cells^2 per hour

  friend bool operator==(const SubstanceField&, const SubstanceField&) = default;
};

struct LifecycleParams {
  double division_threshold = 2000.0;  // fg
  double death_threshold = 250.0;      // fg
  double p_move = 0.3;
  /// Consecutive zero-growth steps after which an agent dies.
  int starvation_limit = 3;
};

struct PhysicalParams {
  double cell_volume_l = 1e-9;
  double gdw_per_fg = 1e-15;
};

/// Maps exchange-flux sign patterns to phenotype ids in first-seen order, starting at 1.
class PhenotypeRegistry {
public:
  int phenotype_of(const std::vector<int>& signs);
  [[nodiscard]] std::size_t size() const { return ids_.size(); }

  friend bool operator==(const PhenotypeRegistry&, const PhenotypeRegistry&) = default;

private:
  std::map<std::vector<int>, int> ids_;
};

/// Sign of each flux with a dead band of `epsilon`.
[[nodiscard]] std::vector<int> flux_signs(const std::map<std::string, double>& fluxes,
                                          const std::vector<std::string>& substances,
                                          double epsilon = 1e-9);

using SpeciesCatalog = std::vector<SpeciesSpec>;

struct Arena {
  std::size_t width = 0;
  std::size_t height = 0;
  /// Kept in row-major scan order (y, then x).
  std::vector<Agent> agents;
  std::vector<SubstanceField> fields;
  double time = 0.0;  // hours
  std::uint64_t rng_seed = 0;

  std::shared_ptr<const SpeciesCatalog> species;
  LifecycleParams lifecycle;
  PhysicalParams physical;
  std::size_t diffusion_substeps = 10;
  SimulationRng rng;
  PhenotypeRegistry phenotypes;

  [[nodiscard]] std::vector<std::string> substance_names() const;
  [[nodiscard]] const SpeciesSpec& species_for(int genotype) const;
  [[nodiscard]] const SubstanceField* field(const std::string& name) const;
};

struct SubstanceInit {
  std::string name;
  double diffusivity = 0.0;
  /// Uniform concentration when gradient_axis is empty; otherwise a linear ramp from
  /// `initial` to `gradient_to` along "x" or "y".
  double initial = 0.0;
  std::string gradient_axis;
  double gradient_to = 0.0;
};

struct SpeciesInit {
  SpeciesSpec spec;
  std::size_t count = 0;
};

struct SimulationConfig {
  std::size_t width = 20;
  std::size_t height = 20;
  double dt = 1.0;  // hours
  std::size_t steps = 8;
  std::uint64_t seed = 42;
  std::size_t diffusion_substeps = 10;
  double initial_biomass = 1000.0;  // fg
  LifecycleParams lifecycle;
  PhysicalParams physical;
  std::vector<SubstanceInit> substances;
  std::vector<SpeciesInit> species;
};

/// Builds the arena: fields from their initial profiles, agents on distinct cells chosen by
/// seeded uniform sampling. Genotypes are renumbered 1..k in species order.
/// Throws BadDimensionsError or OverfullError.
[[nodiscard]] Arena init_arena(const SimulationConfig& config, std::uint64_t seed);

struct MetabolismResult {
  SolveStatus status = SolveStatus::Infeasible;
  double growth_rate = 0.0;  // 1/h
  double new_biomass = 0.0;
  /// Net exchange flux per substance touched by the model.
  std::map<std::string, double> fluxes;
  /// Concentration change (mM) per substance for the agent's own cell.
  std::map<std::string, double> deltas;
  /// Scale applied to the flux vector so no concentration goes negative (1 = unclamped).
  double clamp_factor = 1.0;
};

/// One quasi-steady FBA step for a single agent. Exchange lower bounds become
/// -monod_bound(kinetics, c); exchanges without kinetics keep their model bound while
/// their substance is present and cannot take up an absent or untracked substance.
[[nodiscard]] MetabolismResult agent_metabolism(const Agent& agent, const SpeciesSpec& species,
                                                const std::map<std::string, double>& local,
                                                double dt, const PhysicalParams& physical = {});

struct LifecycleReport {
  std::size_t divisions = 0;
  std::size_t deaths = 0;
  std::size_t moves = 0;
  std::size_t blocked_divisions = 0;
};

/// Divide, die or move, per agent in scan order, using the arena rng.
LifecycleReport apply_agent_lifecycle(Arena& arena);

/// Explicit 5-point diffusion with reflecting boundaries over `dt` hours.
/// Throws UnstableParametersError when diffusivity * dt > 0.25.
[[nodiscard]] SubstanceField diffuse(const SubstanceField& field, double dt);
void diffuse_in_place(SubstanceField& field, double dt, std::vector<double>& scratch);

struct StepReport {
  std::size_t agents_before = 0;
  std::size_t agents_after = 0;
  std::size_t infeasible_solves = 0;
  std::size_t clamped_uptakes = 0;
  LifecycleReport lifecycle;
};

/// metabolism (in scan order, deltas applied immediately) -> lifecycle -> diffusion.
StepReport step(Arena& arena, double dt);

struct Snapshot {
  std::size_t step = 0;
  double time = 0.0;
  std::vector<Agent> agents;
  std::vector<SubstanceField> fields;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct SpeciesInfo {
  int genotype = 0;
  std::string name;
  std::string color;

  friend bool operator==(const SpeciesInfo&, const SpeciesInfo&) = default;
};

struct SimulationTrace {
  std::size_t width = 0;
  std::size_t height = 0;
  double dt = 1.0;
  std::vector<SpeciesInfo> species;
  std::vector<Snapshot> snapshots;
  std::string config_echo;  // JSON text of the generating config, if any

  [[nodiscard]] std::vector<std::string> substance_names() const;

  friend bool operator==(const SimulationTrace&, const SimulationTrace&) = default;
};

/// Initial snapshot plus one per step. Throws SimulationError for n_steps == 0.
[[nodiscard]] SimulationTrace run_simulation(const SimulationConfig& config, std::size_t n_steps);

}  // namespace microlab
