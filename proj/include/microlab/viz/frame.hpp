#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "microlab/arena/grid.hpp"
#include "microlab/dataset/records.hpp"
#include "microlab/viz/color.hpp"
#include "microlab/viz/mesh.hpp"

namespace microlab {

class VizError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class UnknownTimeError : public VizError {
public:
  using VizError::VizError;
};
class UnknownSubstanceError : public VizError {
public:
  using VizError::VizError;
};

enum class Outline { None, Production, Uptake };

[[nodiscard]] const char* outline_name(Outline outline);  // "none" / "production" / "uptake"

inline constexpr double kFluxDeadBand = 1e-9;

/// flux > eps: the organism produces the substance; flux < -eps: it takes it up.
[[nodiscard]] Outline classify_flux(double flux, double eps = kFluxDeadBand);

/// Min and max over every value of `substance` at every time. Throws
/// UnknownSubstanceError when no block names it.
[[nodiscard]] std::pair<double, double> global_extremes(const std::vector<SubstanceBlock>& blocks,
                                                        const std::string& substance);

struct SpeciesEntry {
  int genotype = 0;
  std::string name;
  std::string color;
};

/// Validated dataset pair with per-time row lists and dense matrices, built once
/// after import and shared read-only by frame requests.
class IndexedDataset {
public:
  explicit IndexedDataset(DatasetPair pair);

  [[nodiscard]] const DatasetPair& pair() const { return pair_; }
  [[nodiscard]] const std::vector<long long>& times() const { return pair_.times; }
  [[nodiscard]] const std::vector<std::string>& substances() const { return pair_.substances; }
  [[nodiscard]] const std::vector<SpeciesEntry>& species() const { return species_; }
  [[nodiscard]] std::size_t width() const { return pair_.width; }
  [[nodiscard]] std::size_t height() const { return pair_.height; }

  [[nodiscard]] bool has_time(long long t) const { return time_index_.count(t) != 0; }
  /// Indices into pair().population of the rows at time t, in file order.
  [[nodiscard]] std::span<const std::size_t> rows_at(long long t) const;
  [[nodiscard]] const ConcentrationGrid& matrix(const std::string& substance, long long t) const;
  [[nodiscard]] std::pair<double, double> extremes(const std::string& substance) const;
  /// Flux column (0-based) holding `substance`.
  [[nodiscard]] std::size_t flux_column(const std::string& substance) const;
  [[nodiscard]] const std::string& color_of(int genotype) const;
  /// Largest number of rows at a single time step.
  [[nodiscard]] std::size_t densest_time_rows() const;

private:
  [[nodiscard]] std::size_t time_slot(long long t) const;
  [[nodiscard]] std::size_t substance_slot(const std::string& substance) const;

  DatasetPair pair_;
  std::unordered_map<long long, std::size_t> time_index_;
  std::vector<std::vector<std::size_t>> rows_;            // per time slot
  std::vector<ConcentrationGrid> matrices_;               // [substance][time]
  std::vector<std::pair<double, double>> extremes_;       // per substance
  std::vector<SpeciesEntry> species_;                     // sorted by genotype
  std::unordered_map<int, std::size_t> species_index_;
};

struct OrganismGlyph {
  int x = 1;
  int y = 1;
  int genotype = 0;
  int phenotype = 0;
  double biomass = 0.0;
  std::string name;
  std::string color;
  Outline outline = Outline::None;
  std::array<double, kFluxColumns> fluxes{};

  friend bool operator==(const OrganismGlyph&, const OrganismGlyph&) = default;
};

struct Legend {
  std::string substance;
  double min = 0.0;
  double max = 0.0;
  std::size_t scheme = kDefaultScheme;

  friend bool operator==(const Legend&, const Legend&) = default;
};

struct FrameSelection {
  std::optional<std::string> substance;       // at most one active substance
  MeshMode mode = MeshMode::Flat2D;
  std::size_t scheme = kDefaultScheme;
  std::optional<std::string> flux_substance;  // drives glyph outlines
  double height_scale = kDefaultHeightScale;
};

struct Frame {
  long long time = 0;
  std::vector<OrganismGlyph> glyphs;
  std::optional<std::string> active_substance;
  std::optional<std::string> flux_substance;
  std::optional<HeatmapMesh> mesh;
  std::optional<Legend> legend;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Fills `frame` for time t, reusing its glyph and mesh storage. The result does not
/// depend on what `frame` held before.
void assemble_frame_into(Frame& frame, const IndexedDataset& data, long long t,
                         const FrameSelection& selection);
[[nodiscard]] Frame assemble_frame(const IndexedDataset& data, long long t,
                                   const FrameSelection& selection);

}  // namespace microlab
