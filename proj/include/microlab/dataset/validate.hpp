#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "microlab/dataset/records.hpp"

namespace microlab {

/// "The simulation times <times> of your datasets don't match!"
[[nodiscard]] std::string times_mismatch_message(const std::set<long long>& population_times,
                                                 const std::set<long long>& substance_times);
/// "The simulation dimensions of x <x-dimensions> or y <y-dimensions> don't match!"
[[nodiscard]] std::string dimensions_mismatch_message(const std::set<long long>& x_dims,
                                                      const std::set<long long>& y_dims);
/// "Genotype does not match a name in line <row> of population dataset!"
[[nodiscard]] std::string genotype_mismatch_message(std::size_t line);

/// Cross-checks a parsed pair, in order: time sets, matrix dimensions, agent coordinates
/// inside the area, genotype <-> name bijection. Every violation is reported.
[[nodiscard]] ValidationReport validate_pair(const std::vector<PopulationRecord>& population,
                                             const std::vector<SubstanceBlock>& substance,
                                             const std::string& population_name = kPopulationFileName,
                                             const std::string& substance_name = kSubstanceFileName);

enum class ImportStage { Reading, Validating };

struct ImportOptions {
  std::string population_name = kPopulationFileName;
  std::string substance_name = kSubstanceFileName;
  /// Sizes of the two inputs in bytes, used to turn bytes read into a fraction.
  std::size_t population_bytes = 0;
  std::size_t substance_bytes = 0;
  /// Called with the stage and the fraction of that stage completed, in [0, 1].
  std::function<void(ImportStage, double)> on_progress;
};

struct ImportResult {
  std::optional<DatasetPair> dataset;  // set when the report is clean
  ValidationReport report;
};

/// Parses both files then validates them. Format errors of either file are reported
/// (one per file) and skip the cross-checks.
[[nodiscard]] ImportResult import_pair(std::istream& population, std::istream& substance,
                                       const ImportOptions& options = {});

}  // namespace microlab
