#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "microlab/dataset/records.hpp"

namespace microlab {

/// Shortest decimal text that reads back to the same double ("." separator).
void append_double(std::string& out, double value);
[[nodiscard]] std::string format_double(double value);

[[nodiscard]] std::optional<long long> parse_integer(std::string_view text);
/// Finite decimal; rejects inf/nan, empty text and trailing characters.
[[nodiscard]] std::optional<double> parse_decimal(std::string_view text);

/// Line-at-a-time reader shared by both dataset readers. Buffers are reused between
/// lines, so memory stays bounded by the longest line. Blank lines are skipped and a
/// trailing "\r" is dropped.
class CsvLineReader {
public:
  explicit CsvLineReader(std::istream& in) : in_(in) {}

  /// Advances to the next nonblank line; false at end of input.
  bool next();
  [[nodiscard]] std::size_t line_number() const { return line_number_; }
  [[nodiscard]] const std::vector<std::string_view>& cells() const { return cells_; }
  [[nodiscard]] std::size_t bytes_consumed() const { return bytes_; }

private:
  std::istream& in_;
  std::string line_;
  std::vector<std::string_view> cells_;
  std::size_t line_number_ = 0;
  std::size_t bytes_ = 0;
};

/// Streaming reader for population_dataset.csv. Stops at the first malformed cell by
/// throwing FormatError or ColumnCountError.
class PopulationReader {
public:
  PopulationReader(std::istream& in, std::string path) : lines_(in), path_(std::move(path)) {}

  /// Fills `record` with the next row. The record's buffers are reused.
  bool next(PopulationRecord& record);
  [[nodiscard]] std::size_t bytes_consumed() const { return lines_.bytes_consumed(); }

private:
  CsvLineReader lines_;
  std::string path_;
};

/// Streaming reader for substance_dataset.csv.
class SubstanceReader {
public:
  SubstanceReader(std::istream& in, std::string path) : lines_(in), path_(std::move(path)) {}

  bool next(SubstanceBlock& block);
  [[nodiscard]] std::size_t bytes_consumed() const { return lines_.bytes_consumed(); }

private:
  CsvLineReader lines_;
  std::string path_;
};

[[nodiscard]] std::vector<PopulationRecord> parse_population(
    std::string_view text, const std::string& path = kPopulationFileName);
[[nodiscard]] std::vector<SubstanceBlock> parse_substance(
    std::string_view text, const std::string& path = kSubstanceFileName);

void append_population_row(std::string& out, const PopulationRecord& record);
void append_substance_row(std::string& out, const SubstanceBlock& block);

}  // namespace microlab
