#include "microlab/dataset/records.hpp"

#include <algorithm>
#include <set>

namespace microlab {

const char* cell_type_name(CellType type) {
  switch (type) {
    case CellType::String: return "string";
    case CellType::Integer: return "integer";
    case CellType::Decimal: return "decimal";
    case CellType::NonNegativeDecimal: return "nonnegative decimal";
  }
  return "string";
}

std::string format_error_message(const std::string& path, std::size_t line, std::size_t column,
                                 const std::string& entry, CellType expected) {
  return "Format of " + path + " is invalid. Please check line " + std::to_string(line) +
         ", column " + std::to_string(column) + ". Invalid entry: " + entry +
         ". Should be of type: " + cell_type_name(expected) + "!";
}

std::string column_count_message(std::size_t columns) {
  return "Population dataset has " + std::to_string(columns) + " instead of " +
         std::to_string(kPopulationColumns) + " columns!";
}

FormatError::FormatError(std::string path, std::size_t line, std::size_t column,
                         std::string entry, CellType expected)
    : DatasetError(format_error_message(path, line, column, entry, expected)),
      line_(line), column_(column), entry_(std::move(entry)), expected_(expected) {}

ColumnCountError::ColumnCountError(std::size_t line, std::size_t columns)
    : DatasetError(column_count_message(columns)), line_(line), columns_(columns) {}

bool ValidationReport::status_of(const std::string& file) const {
  for (const auto& [name, ok] : status)
    if (name == file) return ok;
  return false;
}

DatasetPair make_dataset_pair(std::vector<PopulationRecord> population,
                              std::vector<SubstanceBlock> substance) {
  DatasetPair pair;
  std::set<long long> times;
  for (const auto& b : substance) {
    times.insert(b.time);
    pair.width = std::max(pair.width, b.values.size());
    pair.height = std::max(pair.height, static_cast<std::size_t>(std::max(b.row, 0)));
    if (std::find(pair.substances.begin(), pair.substances.end(), b.substance) ==
        pair.substances.end()) {
      pair.substances.push_back(b.substance);
    }
  }
  for (const auto& r : population) times.insert(r.time);
  pair.times.assign(times.begin(), times.end());
  pair.population = std::move(population);
  pair.substance = std::move(substance);
  return pair;
}

}  // namespace microlab
