#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace microlab {

inline constexpr std::size_t kFluxColumns = 6;
inline constexpr std::size_t kPopulationColumns = 8 + kFluxColumns;
inline constexpr const char* kPopulationLabel = "Population";
inline constexpr const char* kSubstanceLabel = "Substance";
inline constexpr const char* kPopulationFileName = "population_dataset.csv";
inline constexpr const char* kSubstanceFileName = "substance_dataset.csv";

/// One row of population_dataset.csv:
/// Population,time,x,y,biomass,genotype,phenotype,name,flux1..flux6
struct PopulationRecord {
  long long time = 0;
  int x = 1;
  int y = 1;
  double biomass = 0.0;  // fg
  int genotype = 0;
  int phenotype = 0;
  std::string name;
  std::array<double, kFluxColumns> fluxes{};  // mmol/(gDW*h)
  /// 1-based source line; 0 for records that were never read from text.
  std::size_t line = 0;

  friend bool operator==(const PopulationRecord&, const PopulationRecord&) = default;
};

/// One line of substance_dataset.csv: Substance,name,time,row,v1..v_x
struct SubstanceBlock {
  std::string substance;
  long long time = 0;
  int row = 1;                // 1-based matrix row (y)
  std::vector<double> values; // mM along x
  std::size_t line = 0;

  friend bool operator==(const SubstanceBlock&, const SubstanceBlock&) = default;
};

/// Cell type names used in format error messages.
enum class CellType { String, Integer, Decimal, NonNegativeDecimal };
[[nodiscard]] const char* cell_type_name(CellType type);

class DatasetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// "Format of <path> is invalid. Please check line <row>, column <column>.
///  Invalid entry: <entry>. Should be of type: <correct format>!"
class FormatError : public DatasetError {
public:
  FormatError(std::string path, std::size_t line, std::size_t column, std::string entry,
              CellType expected);

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }
  [[nodiscard]] const std::string& entry() const { return entry_; }
  [[nodiscard]] CellType expected() const { return expected_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string entry_;
  CellType expected_;
};

/// "Population dataset has <n> instead of 14 columns!"
class ColumnCountError : public DatasetError {
public:
  ColumnCountError(std::size_t line, std::size_t columns);

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t columns() const { return columns_; }

private:
  std::size_t line_;
  std::size_t columns_;
};

[[nodiscard]] std::string format_error_message(const std::string& path, std::size_t line,
                                               std::size_t column, const std::string& entry,
                                               CellType expected);
[[nodiscard]] std::string column_count_message(std::size_t columns);

struct ValidationReport {
  /// File name -> import status, in the order population, substance.
  std::vector<std::pair<std::string, bool>> status;
  std::vector<std::string> errors;

  [[nodiscard]] bool ok() const { return errors.empty(); }
  [[nodiscard]] bool status_of(const std::string& file) const;
};

/// Parsed pair plus the quantities derived from it.
struct DatasetPair {
  std::vector<PopulationRecord> population;
  std::vector<SubstanceBlock> substance;
  std::size_t width = 0;   // x dimension
  std::size_t height = 0;  // y dimension
  std::vector<long long> times;
  /// Substance names in order of first appearance; flux column i belongs to substances[i].
  std::vector<std::string> substances;
};

/// Fills width, height, times and substances from the record lists.
[[nodiscard]] DatasetPair make_dataset_pair(std::vector<PopulationRecord> population,
                                            std::vector<SubstanceBlock> substance);

}  // namespace microlab
