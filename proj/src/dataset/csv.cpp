#include "microlab/dataset/csv.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <system_error>

namespace microlab {

void append_double(std::string& out, double value) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw DatasetError("cannot format value");
  out.append(buffer, end);
}

std::string format_double(double value) {
  std::string out;
  append_double(out, value);
  return out;
}

std::optional<long long> parse_integer(std::string_view text) {
  long long value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first == last) return std::nullopt;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

std::optional<double> parse_decimal(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first == last) return std::nullopt;
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool CsvLineReader::next() {
  while (std::getline(in_, line_)) {
    ++line_number_;
    bytes_ += line_.size() + 1;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    if (line_.empty()) continue;

    cells_.clear();
    std::string_view rest(line_);
    while (true) {
      const auto comma = rest.find(',');
      cells_.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return true;
  }
  return false;
}

namespace {

class CellChecker {
public:
  CellChecker(const std::string& path, const CsvLineReader& lines) : path_(path), lines_(lines) {}

  [[noreturn]] void fail(std::size_t column, CellType type) const {
    const auto& cells = lines_.cells();
    std::string entry = column <= cells.size() ? std::string(cells[column - 1]) : std::string();
    throw FormatError(path_, lines_.line_number(), column, std::move(entry), type);
  }

  std::string_view cell(std::size_t column, CellType type) const {
    if (column > lines_.cells().size()) fail(column, type);
    return lines_.cells()[column - 1];
  }

  void label(std::size_t column, std::string_view expected) const {
    if (cell(column, CellType::String) != expected) fail(column, CellType::String);
  }

  void text(std::size_t column, std::string& out) const {
    const auto v = cell(column, CellType::String);
    if (v.empty()) fail(column, CellType::String);
    out.assign(v);
  }

  template <typename Int>
  Int integer(std::size_t column) const {
    const auto v = parse_integer(cell(column, CellType::Integer));
    if (!v || *v < std::numeric_limits<Int>::min() || *v > std::numeric_limits<Int>::max()) {
      fail(column, CellType::Integer);
    }
    return static_cast<Int>(*v);
  }

  double decimal(std::size_t column) const {
    const auto v = parse_decimal(cell(column, CellType::Decimal));
    if (!v) fail(column, CellType::Decimal);
    return *v;
  }

  double nonnegative(std::size_t column) const {
    const auto v = parse_decimal(cell(column, CellType::NonNegativeDecimal));
    if (!v || *v < 0.0) fail(column, CellType::NonNegativeDecimal);
    return *v;
  }

private:
  const std::string& path_;
  const CsvLineReader& lines_;
};

}  // namespace

bool PopulationReader::next(PopulationRecord& record) {
  if (!lines_.next()) return false;
  const auto& cells = lines_.cells();
  if (cells.size() != kPopulationColumns) {
    throw ColumnCountError(lines_.line_number(), cells.size());
  }
  const CellChecker check(path_, lines_);
  check.label(1, kPopulationLabel);
  record.time = check.integer<long long>(2);
  record.x = check.integer<int>(3);
  record.y = check.integer<int>(4);
  record.biomass = check.nonnegative(5);
  record.genotype = check.integer<int>(6);
  record.phenotype = check.integer<int>(7);
  check.text(8, record.name);
  for (std::size_t k = 0; k < kFluxColumns; ++k) record.fluxes[k] = check.decimal(9 + k);
  record.line = lines_.line_number();
  return true;
}

bool SubstanceReader::next(SubstanceBlock& block) {
  if (!lines_.next()) return false;
  const CellChecker check(path_, lines_);
  check.label(1, kSubstanceLabel);
  check.text(2, block.substance);
  block.time = check.integer<long long>(3);
  block.row = check.integer<int>(4);
  const std::size_t columns = lines_.cells().size();
  if (columns < 5) check.fail(5, CellType::NonNegativeDecimal);
  block.values.resize(columns - 4);
  for (std::size_t c = 5; c <= columns; ++c) block.values[c - 5] = check.nonnegative(c);
  block.line = lines_.line_number();
  return true;
}

std::vector<PopulationRecord> parse_population(std::string_view text, const std::string& path) {
  std::istringstream in{std::string(text)};
  PopulationReader reader(in, path);
  std::vector<PopulationRecord> out;
  PopulationRecord record;
  while (reader.next(record)) out.push_back(record);
  return out;
}

std::vector<SubstanceBlock> parse_substance(std::string_view text, const std::string& path) {
  std::istringstream in{std::string(text)};
  SubstanceReader reader(in, path);
  std::vector<SubstanceBlock> out;
  SubstanceBlock block;
  while (reader.next(block)) out.push_back(block);
  return out;
}

void append_population_row(std::string& out, const PopulationRecord& r) {
  out += kPopulationLabel;
  out += ',';
  out += std::to_string(r.time);
  out += ',';
  out += std::to_string(r.x);
  out += ',';
  out += std::to_string(r.y);
  out += ',';
  append_double(out, r.biomass);
  out += ',';
  out += std::to_string(r.genotype);
  out += ',';
  out += std::to_string(r.phenotype);
  out += ',';
  out += r.name;
  for (double f : r.fluxes) {
    out += ',';
    append_double(out, f);
  }
  out += '\n';
}

void append_substance_row(std::string& out, const SubstanceBlock& b) {
  out += kSubstanceLabel;
  out += ',';
  out += b.substance;
  out += ',';
  out += std::to_string(b.time);
  out += ',';
  out += std::to_string(b.row);
  for (double v : b.values) {
    out += ',';
    append_double(out, v);
  }
  out += '\n';
}

}  // namespace microlab
