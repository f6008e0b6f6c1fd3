#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "microlab/arena/arena.hpp"
#include "microlab/dataset/records.hpp"

namespace microlab {

/// The `k` substances whose grid-total concentration varies most over the trace
/// (population variance across snapshots). Ties are broken alphabetically.
[[nodiscard]] std::vector<std::string> select_fluctuating_substances(const SimulationTrace& trace,
                                                                     std::size_t k = 6);

struct FluxMode {
  /// When set, every flux cell is drawn uniformly from [-50, 50) with this seed.
  std::optional<std::uint64_t> random_seed;

  static FluxMode computed() { return {}; }
  static FluxMode randomized(std::uint64_t seed) { return {seed}; }
};

inline constexpr double kRandomFluxLimit = 50.0;

struct ExportOptions {
  /// Write the step-0 snapshot too. The demo pair leaves it out so its times run 1..8.
  bool include_initial = true;
};

/// Flux column names: `substances` padded with "none" placeholders to six entries.
/// Padded columns are always zero in Computed mode. Throws DatasetError for > 6 names.
[[nodiscard]] std::vector<std::string> flux_columns(const std::vector<std::string>& substances);

/// Population records in file order: snapshot by snapshot, agents in scan order.
[[nodiscard]] std::vector<PopulationRecord> population_records(
    const SimulationTrace& trace, const std::vector<std::string>& substances, FluxMode mode,
    const ExportOptions& options = {});

/// Substance lines: for each substance, for each snapshot, rows 1..height.
[[nodiscard]] std::vector<SubstanceBlock> substance_blocks(
    const SimulationTrace& trace, const std::vector<std::string>& substances,
    const ExportOptions& options = {});

[[nodiscard]] std::string export_population(const SimulationTrace& trace,
                                            const std::vector<std::string>& substances,
                                            FluxMode mode, const ExportOptions& options = {});
[[nodiscard]] std::string export_substance(const SimulationTrace& trace,
                                           const std::vector<std::string>& substances,
                                           const ExportOptions& options = {});

[[nodiscard]] std::string write_population(const std::vector<PopulationRecord>& records);
[[nodiscard]] std::string write_substance(const std::vector<SubstanceBlock>& blocks);

}  // namespace microlab
