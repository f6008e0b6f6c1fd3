#include "microlab/dataset/export.hpp"

#include <algorithm>

#include "microlab/arena/random.hpp"
#include "microlab/dataset/csv.hpp"

namespace microlab {

std::vector<std::string> select_fluctuating_substances(const SimulationTrace& trace,
                                                       std::size_t k) {
  struct Score {
    std::string name;
    double variance;
  };
  std::vector<Score> scores;
  const auto names = trace.substance_names();
  for (std::size_t s = 0; s < names.size(); ++s) {
    std::vector<double> totals;
    totals.reserve(trace.snapshots.size());
    for (const auto& snap : trace.snapshots) totals.push_back(snap.fields.at(s).concentrations.sum());
    double variance = 0.0;
    const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
    if (!totals.empty() && *lo != *hi) {
      double mean = 0.0;
      for (double t : totals) mean += t;
      mean /= static_cast<double>(totals.size());
      for (double t : totals) variance += (t - mean) * (t - mean);
      variance /= static_cast<double>(totals.size());
    }
    scores.push_back({names[s], variance});
  }
  std::sort(scores.begin(), scores.end(), [](const Score& a, const Score& b) {
    return a.variance != b.variance ? a.variance > b.variance : a.name < b.name;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(k, scores.size()); ++i) out.push_back(scores[i].name);
  return out;
}

std::vector<std::string> flux_columns(const std::vector<std::string>& substances) {
  if (substances.size() > kFluxColumns) {
    throw DatasetError("at most " + std::to_string(kFluxColumns) + " substances can be exported");
  }
  std::vector<std::string> columns = substances;
  for (std::size_t i = columns.size(); i < kFluxColumns; ++i) {
    columns.push_back("none" + std::to_string(i + 1));
  }
  return columns;
}

namespace {

std::string name_of(const SimulationTrace& trace, int genotype) {
  for (const auto& s : trace.species)
    if (s.genotype == genotype) return s.name;
  throw DatasetError("trace has no species with genotype " + std::to_string(genotype));
}

}  // namespace

std::vector<PopulationRecord> population_records(const SimulationTrace& trace,
                                                 const std::vector<std::string>& substances,
                                                 FluxMode mode, const ExportOptions& options) {
  const auto columns = flux_columns(substances);
  std::optional<SimulationRng> rng;
  if (mode.random_seed) rng.emplace(*mode.random_seed);

  std::vector<PopulationRecord> records;
  for (const auto& snap : trace.snapshots) {
    if (snap.step == 0 && !options.include_initial) continue;
    for (const auto& agent : snap.agents) {
      PopulationRecord r;
      r.time = static_cast<long long>(snap.step);
      r.x = agent.x;
      r.y = agent.y;
      r.biomass = agent.biomass;
      r.genotype = agent.genotype;
      r.phenotype = agent.phenotype;
      r.name = name_of(trace, agent.genotype);
      for (std::size_t k = 0; k < kFluxColumns; ++k) {
        if (rng) {
          r.fluxes[k] = -kRandomFluxLimit + 2.0 * kRandomFluxLimit * uniform_unit(*rng);
        } else if (k < substances.size()) {
          const auto it = agent.last_fluxes.find(columns[k]);
          r.fluxes[k] = it == agent.last_fluxes.end() ? 0.0 : it->second;
        }
      }
      records.push_back(std::move(r));
    }
  }
  return records;
}

std::vector<SubstanceBlock> substance_blocks(const SimulationTrace& trace,
                                             const std::vector<std::string>& substances,
                                             const ExportOptions& options) {
  const auto names = trace.substance_names();
  std::vector<SubstanceBlock> blocks;
  for (const auto& substance : substances) {
    const auto it = std::find(names.begin(), names.end(), substance);
    if (it == names.end()) throw DatasetError("trace has no substance '" + substance + "'");
    const auto index = static_cast<std::size_t>(it - names.begin());
    for (const auto& snap : trace.snapshots) {
      if (snap.step == 0 && !options.include_initial) continue;
      const auto& grid = snap.fields.at(index).concentrations;
      for (std::size_t row = 0; row < grid.height(); ++row) {
        SubstanceBlock b;
        b.substance = substance;
        b.time = static_cast<long long>(snap.step);
        b.row = static_cast<int>(row) + 1;
        b.values.reserve(grid.width());
        for (std::size_t col = 0; col < grid.width(); ++col) b.values.push_back(grid.at(row, col));
        blocks.push_back(std::move(b));
      }
    }
  }
  return blocks;
}

std::string write_population(const std::vector<PopulationRecord>& records) {
  std::string out;
  for (const auto& r : records) append_population_row(out, r);
  return out;
}

std::string write_substance(const std::vector<SubstanceBlock>& blocks) {
  std::string out;
  for (const auto& b : blocks) append_substance_row(out, b);
  return out;
}

std::string export_population(const SimulationTrace& trace,
                              const std::vector<std::string>& substances, FluxMode mode,
                              const ExportOptions& options) {
  return write_population(population_records(trace, substances, mode, options));
}

std::string export_substance(const SimulationTrace& trace,
                             const std::vector<std::string>& substances,
                             const ExportOptions& options) {
  return write_substance(substance_blocks(trace, substances, options));
}

}  // namespace microlab
