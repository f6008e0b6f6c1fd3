#include <cmath>
#include <set>
#include <utility>

#include <gtest/gtest.h>

#include "microlab/arena/arena.hpp"
#include "microlab/arena/config_io.hpp"
#include "support/lp_oracle.hpp"
#include "support/sim_properties.hpp"
#include "support/toy_species.hpp"

namespace microlab {
namespace {

using testing::two_species_config;
using testing::uptake_species;

std::set<std::pair<int, int>> cells_of(const std::vector<Agent>& agents) {
  std::set<std::pair<int, int>> cells;
  for (const auto& a : agents) cells.insert({a.x, a.y});
  return cells;
}

TEST(InitArena, PlacesAgentsOnDistinctCells) {
  const auto arena = init_arena(two_species_config(10), 42);
  ASSERT_EQ(arena.agents.size(), 20u);
  EXPECT_EQ(cells_of(arena.agents).size(), 20u);
  for (const auto& a : arena.agents) {
    EXPECT_GE(a.x, 1);
    EXPECT_LE(a.x, 20);
    EXPECT_GE(a.y, 1);
    EXPECT_LE(a.y, 20);
  }
}

TEST(InitArena, Overfull) {
  auto cfg = two_species_config(0);
  cfg.width = 2;
  cfg.height = 2;
  cfg.species[0].count = 5;
  EXPECT_THROW((void)init_arena(cfg, 1), OverfullError);
}

TEST(InitArena, BadDimensions) {
  auto cfg = two_species_config(1);
  cfg.width = 0;
  EXPECT_THROW((void)init_arena(cfg, 1), BadDimensionsError);
}

TEST(InitArena, SameSeedSamePlacement) {
  const auto a = init_arena(two_species_config(10), 42);
  const auto b = init_arena(two_species_config(10), 42);
  EXPECT_EQ(a.agents, b.agents);
  const auto c = init_arena(two_species_config(10), 43);
  EXPECT_NE(a.agents, c.agents);
}

TEST(InitArena, GradientProfile) {
  auto cfg = two_species_config(0);
  cfg.width = 5;
  cfg.height = 3;
  cfg.substances[0] = {"Glucose", 0.1, 0.0, "x", 4.0};
  const auto arena = init_arena(cfg, 1);
  const auto& g = arena.fields[0].concentrations;
  for (std::size_t row = 0; row < 3; ++row) {
    for (std::size_t col = 0; col < 5; ++col) EXPECT_DOUBLE_EQ(g.at(row, col), double(col));
  }
}

TEST(AgentMetabolism, NoSubstrateNoGrowth) {
  const auto species = uptake_species("Escherichia_coli_K12", "Glucose");
  Agent agent;
  agent.biomass = 1000.0;
  const auto r = agent_metabolism(agent, species, {{"Glucose", 0.0}}, 1.0);
  EXPECT_EQ(r.growth_rate, 0.0);
  EXPECT_EQ(r.new_biomass, 1000.0);
  for (const auto& [name, d] : r.deltas) EXPECT_EQ(d, 0.0) << name;
}

TEST(AgentMetabolism, AbundantSubstrateComposesMonodAndFba) {
  const auto species = uptake_species("Escherichia_coli_K12", "Glucose", 10.0, 0.5, 0.1);
  const double c = 1000.0;
  Agent agent;
  agent.biomass = 1000.0;
  const auto r = agent_metabolism(agent, species, {{"Glucose", c}}, 1.0);

  // Oracle: Monod bound on the exchange, then vertex enumeration of the FBA polytope.
  const double bound = monod_bound({10.0, 0.5}, c);
  auto reactions = species.model.reactions();
  reactions[0].lower_bound = -bound;
  const auto oracle = testing::enumerate_vertices(
      build_model(species.model.metabolites(), reactions, species.model.name()));
  ASSERT_TRUE(oracle.feasible);

  EXPECT_NEAR(r.growth_rate, oracle.best_objective, 1e-9);
  EXPECT_NEAR(r.new_biomass, 1000.0 * std::exp(oracle.best_objective), 1e-6);
  EXPECT_NEAR(r.fluxes.at("Glucose"), -bound, 1e-9);
  EXPECT_NEAR(r.deltas.at("Glucose"), -bound * 1000.0 * 1e-15 * 1.0 / 1e-9, 1e-15);
  EXPECT_LT(r.deltas.at("Glucose"), 0.0);
  EXPECT_EQ(r.clamp_factor, 1.0);
}

TEST(AgentMetabolism, ClampKeepsConcentrationNonNegative) {
  const auto species = uptake_species("Escherichia_coli_K12", "Glucose", 10.0, 1e-6, 0.1);
  Agent agent;
  agent.biomass = 1e6;  // large enough to overdraw a tiny pool
  const double c = 1e-3;
  const auto r = agent_metabolism(agent, species, {{"Glucose", c}}, 1.0);
  EXPECT_LT(r.clamp_factor, 1.0);
  EXPECT_GE(c + r.deltas.at("Glucose"), -1e-18);
  EXPECT_NEAR(c + r.deltas.at("Glucose"), 0.0, 1e-15);
  // Growth is scaled with the uptake.
  EXPECT_NEAR(r.growth_rate, -0.1 * r.fluxes.at("Glucose"), 1e-12);
}

TEST(AgentMetabolism, ZeroDtIsRejected) {
  const auto species = uptake_species("Escherichia_coli_K12", "Glucose");
  Agent agent;
  agent.biomass = 1.0;
  EXPECT_THROW((void)agent_metabolism(agent, species, {{"Glucose", 1.0}}, 0.0), SimulationError);
}

Arena lifecycle_arena(std::size_t w, std::size_t h) {
  SimulationConfig cfg = two_species_config(0);
  cfg.width = w;
  cfg.height = h;
  cfg.substances.clear();
  Arena arena = init_arena(cfg, 7);
  arena.lifecycle = LifecycleParams{2000.0, 250.0, 0.0, 3};
  return arena;
}

Agent agent_at(int x, int y, double biomass) {
  Agent a;
  a.x = x;
  a.y = y;
  a.genotype = 1;
  a.biomass = biomass;
  return a;
}

TEST(Lifecycle, DivisionSplitsBiomass) {
  Arena arena = lifecycle_arena(3, 3);
  arena.agents = {agent_at(2, 2, 4000.0)};
  const auto report = apply_agent_lifecycle(arena);
  EXPECT_EQ(report.divisions, 1u);
  ASSERT_EQ(arena.agents.size(), 2u);
  for (const auto& a : arena.agents) EXPECT_EQ(a.biomass, 2000.0);
  EXPECT_EQ(cells_of(arena.agents).size(), 2u);
}

TEST(Lifecycle, LowBiomassDies) {
  Arena arena = lifecycle_arena(3, 3);
  arena.agents = {agent_at(1, 1, 100.0), agent_at(3, 3, 1000.0)};
  const auto report = apply_agent_lifecycle(arena);
  EXPECT_EQ(report.deaths, 1u);
  ASSERT_EQ(arena.agents.size(), 1u);
  EXPECT_EQ(arena.agents[0].x, 3);
}

TEST(Lifecycle, StarvationLimitKills) {
  Arena arena = lifecycle_arena(3, 3);
  Agent starving = agent_at(1, 1, 1000.0);
  starving.starvation_steps = 3;
  Agent hungry = agent_at(3, 3, 1000.0);
  hungry.starvation_steps = 2;
  arena.agents = {starving, hungry};
  apply_agent_lifecycle(arena);
  ASSERT_EQ(arena.agents.size(), 1u);
  EXPECT_EQ(arena.agents[0].starvation_steps, 2);
}

TEST(Lifecycle, PackedArenaBlocksDivision) {
  Arena arena = lifecycle_arena(3, 3);
  arena.agents.clear();
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x) arena.agents.push_back(agent_at(x, y, 1000.0));
  arena.agents[4].biomass = 5000.0;  // centre
  const auto report = apply_agent_lifecycle(arena);
  EXPECT_EQ(report.divisions, 0u);
  EXPECT_EQ(report.blocked_divisions, 1u);
  ASSERT_EQ(arena.agents.size(), 9u);
  EXPECT_EQ(arena.agents[4].biomass, 5000.0);
}

TEST(Lifecycle, MovesOnlyToEmptyNeighbours) {
  Arena arena = lifecycle_arena(6, 6);
  arena.lifecycle.p_move = 1.0;
  arena.agents = {agent_at(1, 1, 1000.0), agent_at(2, 1, 1000.0), agent_at(6, 6, 1000.0)};
  for (int round = 0; round < 50; ++round) {
    apply_agent_lifecycle(arena);
    ASSERT_EQ(arena.agents.size(), 3u);
    EXPECT_EQ(cells_of(arena.agents).size(), 3u);
    for (const auto& a : arena.agents) {
      EXPECT_GE(a.x, 1);
      EXPECT_LE(a.x, 6);
      EXPECT_GE(a.y, 1);
      EXPECT_LE(a.y, 6);
    }
  }
}

SubstanceField field_of(std::size_t w, std::size_t h, double d) {
  return SubstanceField{"S", ConcentrationGrid(w, h, 0.0), d};
}

TEST(Diffuse, UniformFieldUnchanged) {
  SubstanceField f{"S", ConcentrationGrid(6, 4, 3.25), 0.2};
  const auto out = diffuse(f, 1.0);
  EXPECT_EQ(out.concentrations, f.concentrations);
}

TEST(Diffuse, SpikeConservesMassAndMatchesStencil) {
  for (double r : {0.01, 0.1, 0.2, 0.25}) {
    auto f = field_of(5, 5, r);
    f.concentrations.at(2, 2) = 1.0;
    const auto out = diffuse(f, 1.0);
    EXPECT_NEAR(out.concentrations.sum(), 1.0, 1e-12);
    // Hand-evaluated stencil: centre keeps 1 - 4r, each orthogonal neighbour gets r.
    EXPECT_DOUBLE_EQ(out.concentrations.at(2, 2), 1.0 - 4.0 * r);
    EXPECT_DOUBLE_EQ(out.concentrations.at(1, 2), r);
    EXPECT_DOUBLE_EQ(out.concentrations.at(2, 3), r);
    EXPECT_EQ(out.concentrations.at(1, 1), 0.0);
  }
}

TEST(Diffuse, CornerSpikeReflects) {
  auto f = field_of(4, 4, 0.25);
  f.concentrations.at(0, 0) = 8.0;
  const auto out = diffuse(f, 1.0);
  // Two in-grid neighbours: the corner keeps 1 - 2r of its mass.
  EXPECT_DOUBLE_EQ(out.concentrations.at(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(out.concentrations.sum(), 8.0);
}

TEST(Diffuse, RejectsUnstableParameters) {
  EXPECT_THROW((void)diffuse(field_of(3, 3, 0.3), 1.0), UnstableParametersError);
  EXPECT_THROW((void)diffuse(field_of(3, 3, 1.0), 0.26), UnstableParametersError);
  EXPECT_NO_THROW((void)diffuse(field_of(3, 3, 1.0), 0.25));
}

TEST(Diffuse, MaximumPrincipleOnRandomFields) {
  SimulationRng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = field_of(7 + trial % 3, 5 + trial % 4, 0.05 + 0.01 * trial);
    for (auto& v : f.concentrations.values()) v = 10.0 * uniform_unit(rng);
    for (int s = 0; s < 30; ++s) {
      const double lo = f.concentrations.min();
      const double hi = f.concentrations.max();
      const double mass = f.concentrations.sum();
      f = diffuse(f, 1.0);
      EXPECT_LE(f.concentrations.max(), hi);
      EXPECT_GE(f.concentrations.min(), lo);
      EXPECT_NEAR(f.concentrations.sum(), mass, 1e-9 * mass);
    }
  }
}

TEST(Phenotype, FirstSeenNumbering) {
  PhenotypeRegistry reg;
  EXPECT_EQ(reg.phenotype_of({1, 0}), 1);
  EXPECT_EQ(reg.phenotype_of({0, 1}), 2);
  EXPECT_EQ(reg.phenotype_of({1, 0}), 1);
  EXPECT_EQ(reg.phenotype_of({-1, 0}), 3);
  EXPECT_EQ(reg.size(), 3u);
}

TEST(Phenotype, SignsUseDeadBand) {
  const auto signs = flux_signs({{"A", 1e-12}, {"B", -2.0}, {"C", 3.0}}, {"A", "B", "C", "D"});
  EXPECT_EQ(signs, (std::vector<int>{0, -1, 1, 0}));
}

TEST(Step, EmptyArenaOnlyDiffuses) {
  auto cfg = two_species_config(0);
  cfg.substances[0] = {"Glucose", 0.2, 0.0, "x", 10.0};
  Arena arena = init_arena(cfg, 3);
  const double mass = arena.fields[0].concentrations.sum();
  const auto before = arena.fields[0].concentrations;
  step(arena, 1.0);
  EXPECT_TRUE(arena.agents.empty());
  EXPECT_NE(arena.fields[0].concentrations, before);
  EXPECT_NEAR(arena.fields[0].concentrations.sum(), mass, 1e-9 * mass);
  EXPECT_DOUBLE_EQ(arena.time, 1.0);
}

TEST(Step, SingleAgentGrowsAndDepletesItsCell) {
  auto cfg = two_species_config(0);
  cfg.species[0].count = 1;
  cfg.lifecycle.p_move = 0.0;
  cfg.lifecycle.division_threshold = 1e9;
  Arena arena = init_arena(cfg, 11);
  const Agent start = arena.agents.at(0);
  const double before = arena.fields[0].concentrations.at(start.y - 1, start.x - 1);

  step(arena, 1.0);
  ASSERT_EQ(arena.agents.size(), 1u);
  EXPECT_GT(arena.agents[0].biomass, start.biomass);
  EXPECT_LT(arena.fields[0].concentrations.at(start.y - 1, start.x - 1), before);
  EXPECT_LT(arena.agents[0].last_fluxes.at("Glucose"), 0.0);
}

TEST(Step, NoAgentSharesACell) {
  auto cfg = two_species_config(30, 50.0);
  cfg.initial_biomass = 1000.0;
  cfg.physical.cell_volume_l = 1e-11;
  Arena arena = init_arena(cfg, 5);
  for (int s = 0; s < 8; ++s) {
    step(arena, 1.0);
    EXPECT_EQ(cells_of(arena.agents).size(), arena.agents.size());
    for (const auto& f : arena.fields) EXPECT_GE(f.concentrations.min(), 0.0);
  }
}

TEST(RunSimulation, EightHourlyStepsGiveNineSnapshots) {
  const auto trace = run_simulation(two_species_config(10), 8);
  ASSERT_EQ(trace.snapshots.size(), 9u);
  EXPECT_DOUBLE_EQ(trace.snapshots.back().time, 8.0);
  for (std::size_t k = 1; k < trace.snapshots.size(); ++k) {
    EXPECT_DOUBLE_EQ(trace.snapshots[k].time - trace.snapshots[k - 1].time, 1.0);
    EXPECT_EQ(trace.snapshots[k].step, k);
  }
}

TEST(RunSimulation, ZeroStepsIsAnError) {
  EXPECT_THROW((void)run_simulation(two_species_config(10), 0), SimulationError);
}

TEST(RunSimulation, DeterministicAndJsonRoundTrip) {
  const auto a = run_simulation(two_species_config(10), 4);
  const auto b = run_simulation(two_species_config(10), 4);
  EXPECT_EQ(a, b);
  EXPECT_EQ(trace_from_json(trace_to_json(a)), a);
}

TEST(RunSimulation, SuppliedSpeciesGrowAndConsumedSubstratesShrink) {
  for (std::uint64_t seed : {1u, 2u, 3u, 42u}) {
    auto cfg = two_species_config(12);
    cfg.seed = seed;
    const auto trace = run_simulation(cfg, 8);
    std::size_t checked = 0;
    EXPECT_EQ(testing::biomass_nondecreasing_until_exhaustion(trace, 1, "Glucose", &checked), "");
    EXPECT_EQ(checked, 8u);
    EXPECT_EQ(testing::biomass_nondecreasing_until_exhaustion(trace, 2, "Lactate"), "");
    EXPECT_EQ(testing::total_nonincreasing(trace, "Glucose"), "");
    EXPECT_EQ(testing::total_nonincreasing(trace, "Lactate"), "");
  }
}

TEST(ConfigJson, ParsesInlineModelsAndDefaults) {
  const auto doc = nlohmann::json::parse(R"({
    "width": 8, "height": 6, "seed": 3, "initial_biomass_fg": 400,
    "substances": [{"name": "Glucose", "diffusivity": 0.1, "initial": 2.0},
                   {"name": "Acetate", "initial": {"gradient": {"axis": "y", "from": 0, "to": 1}}}],
    "species": [{"name": "Escherichia_coli_K12", "count": 4, "color": "#FF0000",
                 "kinetics": {"EX_glc": {"vmax": 10, "km": 0.5}},
                 "model": {"name": "Escherichia_coli_K12",
                           "metabolites": [{"id": "glc", "name": "Glucose", "external": true},
                                           {"id": "b"}],
                           "reactions": [
                             {"id": "EX_glc", "stoichiometry": {"glc": -1}, "lower_bound": -10, "upper_bound": 0},
                             {"id": "R1", "stoichiometry": {"glc": -1, "b": 1}, "lower_bound": 0, "upper_bound": 1000},
                             {"id": "BIO", "stoichiometry": {"b": -1}, "lower_bound": 0, "upper_bound": 1000, "objective": 0.1}]}}]
  })");
  const auto cfg = config_from_json(doc);
  EXPECT_EQ(cfg.width, 8u);
  EXPECT_EQ(cfg.lifecycle.division_threshold, 800.0);
  EXPECT_EQ(cfg.lifecycle.death_threshold, 100.0);
  EXPECT_EQ(cfg.lifecycle.p_move, 0.3);
  ASSERT_EQ(cfg.substances.size(), 2u);
  EXPECT_EQ(cfg.substances[1].gradient_axis, "y");
  ASSERT_EQ(cfg.species.size(), 1u);
  EXPECT_EQ(cfg.species[0].spec.kinetics.at("EX_glc").vmax, 10.0);
  const auto trace = run_simulation(cfg, 2);
  EXPECT_EQ(trace.snapshots.size(), 3u);
}

}  // namespace
}  // namespace microlab
