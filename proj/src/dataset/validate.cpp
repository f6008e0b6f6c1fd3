#include "microlab/dataset/validate.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "microlab/dataset/csv.hpp"

namespace microlab {
namespace {

// Consecutive runs collapse to "a-b": {1,2,3,5} -> "1-3, 5".
std::string format_runs(const std::set<long long>& values) {
  std::string out;
  auto it = values.begin();
  while (it != values.end()) {
    const long long first = *it;
    long long last = first;
    auto next = std::next(it);
    while (next != values.end() && *next == last + 1) {
      last = *next;
      ++next;
    }
    if (!out.empty()) out += ", ";
    out += std::to_string(first);
    if (last != first) out += "-" + std::to_string(last);
    it = next;
  }
  return out;
}

std::string join_and(const std::set<long long>& values) {
  std::string out;
  for (long long v : values) {
    if (!out.empty()) out += " and ";
    out += std::to_string(v);
  }
  return out;
}

}  // namespace

std::string times_mismatch_message(const std::set<long long>& population_times,
                                   const std::set<long long>& substance_times) {
  return "The simulation times " + format_runs(population_times) + " and " +
         format_runs(substance_times) + " of your datasets don't match!";
}

std::string dimensions_mismatch_message(const std::set<long long>& x_dims,
                                        const std::set<long long>& y_dims) {
  return "The simulation dimensions of x " + join_and(x_dims) + " or y " + join_and(y_dims) +
         " don't match!";
}

std::string genotype_mismatch_message(std::size_t line) {
  return "Genotype does not match a name in line " + std::to_string(line) +
         " of population dataset!";
}

ValidationReport validate_pair(const std::vector<PopulationRecord>& population,
                               const std::vector<SubstanceBlock>& substance,
                               const std::string& population_name,
                               const std::string& substance_name) {
  ValidationReport report;
  bool population_ok = true;
  bool substance_ok = true;

  // (1) time sets
  std::set<long long> pop_times;
  std::set<long long> sub_times;
  for (const auto& r : population) pop_times.insert(r.time);
  for (const auto& b : substance) sub_times.insert(b.time);
  if (pop_times != sub_times) {
    report.errors.push_back(times_mismatch_message(pop_times, sub_times));
    population_ok = substance_ok = false;
  }

  // (2) every (substance, time) matrix must have the same width and rows 1..height.
  struct Matrix {
    std::set<int> rows;
    std::size_t lines = 0;
  };
  std::map<std::pair<std::string, long long>, Matrix> matrices;
  std::set<long long> x_dims;
  for (const auto& b : substance) {
    x_dims.insert(static_cast<long long>(b.values.size()));
    auto& m = matrices[{b.substance, b.time}];
    m.rows.insert(b.row);
    ++m.lines;
  }
  std::set<long long> y_dims;
  for (const auto& [key, m] : matrices) {
    const int top = *m.rows.rbegin();
    const bool complete = *m.rows.begin() == 1 && m.rows.size() == static_cast<std::size_t>(top) &&
                          m.lines == m.rows.size();
    y_dims.insert(top);
    if (!complete) y_dims.insert(static_cast<long long>(m.lines));
  }
  if (x_dims.size() > 1 || y_dims.size() > 1) {
    report.errors.push_back(dimensions_mismatch_message(x_dims, y_dims));
    substance_ok = false;
  }

  // (3) organisms inside the area
  const long long width = x_dims.empty() ? 0 : *x_dims.rbegin();
  const long long height = y_dims.empty() ? 0 : *y_dims.rbegin();
  std::set<long long> agent_x{width};
  std::set<long long> agent_y{height};
  bool outside = false;
  for (const auto& r : population) {
    if (r.x < 1 || r.x > width) {
      agent_x.insert(r.x);
      outside = true;
    }
    if (r.y < 1 || r.y > height) {
      agent_y.insert(r.y);
      outside = true;
    }
  }
  if (outside) {
    // Report the extremes only; a shifted file would otherwise list every row.
    std::set<long long> xs{*agent_x.begin(), *agent_x.rbegin()};
    std::set<long long> ys{*agent_y.begin(), *agent_y.rbegin()};
    report.errors.push_back(dimensions_mismatch_message(xs, ys));
    population_ok = false;
  }

  // (4) genotype <-> name must be one-to-one
  std::map<int, std::string> name_of;
  std::map<std::string, int, std::less<>> genotype_of;
  for (const auto& r : population) {
    const auto [g, new_genotype] = name_of.try_emplace(r.genotype, r.name);
    const auto [n, new_name] = genotype_of.try_emplace(r.name, r.genotype);
    if (g->second != r.name || n->second != r.genotype) {
      report.errors.push_back(genotype_mismatch_message(r.line));
      population_ok = false;
    }
  }

  report.status = {{population_name, population_ok}, {substance_name, substance_ok}};
  return report;
}

ImportResult import_pair(std::istream& population, std::istream& substance,
                         const ImportOptions& options) {
  ImportResult result;
  const std::size_t total = options.population_bytes + options.substance_bytes;
  auto report_reading = [&](std::size_t bytes) {
    if (options.on_progress && total > 0) {
      options.on_progress(ImportStage::Reading,
                          std::min(1.0, static_cast<double>(bytes) / static_cast<double>(total)));
    }
  };

  std::vector<PopulationRecord> records;
  std::vector<SubstanceBlock> blocks;
  bool population_ok = true;
  bool substance_ok = true;
  std::size_t progress_tick = 0;

  try {
    PopulationReader reader(population, options.population_name);
    PopulationRecord record;
    while (reader.next(record)) {
      records.push_back(record);
      if (++progress_tick % 256 == 0) report_reading(reader.bytes_consumed());
    }
    report_reading(options.population_bytes);
  } catch (const DatasetError& e) {
    result.report.errors.push_back(e.what());
    population_ok = false;
  }

  try {
    SubstanceReader reader(substance, options.substance_name);
    SubstanceBlock block;
    while (reader.next(block)) {
      blocks.push_back(block);
      if (++progress_tick % 64 == 0) report_reading(options.population_bytes + reader.bytes_consumed());
    }
    report_reading(total);
  } catch (const DatasetError& e) {
    result.report.errors.push_back(e.what());
    substance_ok = false;
  }

  if (!population_ok || !substance_ok) {
    result.report.status = {{options.population_name, population_ok},
                            {options.substance_name, substance_ok}};
    return result;
  }

  if (options.on_progress) options.on_progress(ImportStage::Validating, 0.0);
  result.report = validate_pair(records, blocks, options.population_name, options.substance_name);
  if (options.on_progress) options.on_progress(ImportStage::Validating, 1.0);
  if (result.report.ok()) result.dataset = make_dataset_pair(std::move(records), std::move(blocks));
  return result;
}

}  // namespace microlab
