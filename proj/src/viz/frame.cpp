#include "microlab/viz/frame.hpp"

#include <algorithm>
#include <limits>

namespace microlab {

const char* outline_name(Outline outline) {
  switch (outline) {
    case Outline::Production: return "production";
    case Outline::Uptake: return "uptake";
    case Outline::None: break;
  }
  return "none";
}

Outline classify_flux(double flux, double eps) {
  if (flux > eps) return Outline::Production;
  if (flux < -eps) return Outline::Uptake;
  return Outline::None;
}

std::pair<double, double> global_extremes(const std::vector<SubstanceBlock>& blocks,
                                          const std::string& substance) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool seen = false;
  for (const auto& b : blocks) {
    if (b.substance != substance) continue;
    for (double v : b.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      seen = true;
    }
  }
  if (!seen) throw UnknownSubstanceError("unknown substance '" + substance + "'");
  return {lo, hi};
}

IndexedDataset::IndexedDataset(DatasetPair pair) : pair_(std::move(pair)) {
  const std::size_t nt = pair_.times.size();
  for (std::size_t i = 0; i < nt; ++i) time_index_.emplace(pair_.times[i], i);

  rows_.resize(nt);
  for (std::size_t i = 0; i < pair_.population.size(); ++i) {
    const auto& r = pair_.population[i];
    rows_[time_slot(r.time)].push_back(i);
    if (species_index_.count(r.genotype) == 0) {
      species_index_.emplace(r.genotype, species_.size());
      species_.push_back({r.genotype, r.name, species_color(r.genotype)});
    }
  }
  std::sort(species_.begin(), species_.end(),
            [](const SpeciesEntry& a, const SpeciesEntry& b) { return a.genotype < b.genotype; });
  for (std::size_t i = 0; i < species_.size(); ++i) species_index_[species_[i].genotype] = i;

  const std::size_t ns = pair_.substances.size();
  matrices_.assign(ns * nt, ConcentrationGrid(pair_.width, pair_.height, 0.0));
  extremes_.assign(ns, {std::numeric_limits<double>::infinity(),
                        -std::numeric_limits<double>::infinity()});
  for (const auto& b : pair_.substance) {
    const std::size_t s = substance_slot(b.substance);
    auto& grid = matrices_[s * nt + time_slot(b.time)];
    const auto row = static_cast<std::size_t>(b.row - 1);
    for (std::size_t col = 0; col < b.values.size() && col < grid.width(); ++col) {
      if (row < grid.height()) grid.at(row, col) = b.values[col];
    }
    for (double v : b.values) {
      extremes_[s].first = std::min(extremes_[s].first, v);
      extremes_[s].second = std::max(extremes_[s].second, v);
    }
  }
}

std::size_t IndexedDataset::time_slot(long long t) const {
  const auto it = time_index_.find(t);
  if (it == time_index_.end()) throw UnknownTimeError("unknown time " + std::to_string(t));
  return it->second;
}

std::size_t IndexedDataset::substance_slot(const std::string& substance) const {
  const auto& names = pair_.substances;
  const auto it = std::find(names.begin(), names.end(), substance);
  if (it == names.end()) throw UnknownSubstanceError("unknown substance '" + substance + "'");
  return static_cast<std::size_t>(it - names.begin());
}

std::span<const std::size_t> IndexedDataset::rows_at(long long t) const {
  return rows_[time_slot(t)];
}

const ConcentrationGrid& IndexedDataset::matrix(const std::string& substance, long long t) const {
  const std::size_t s = substance_slot(substance);
  return matrices_[s * pair_.times.size() + time_slot(t)];
}

std::pair<double, double> IndexedDataset::extremes(const std::string& substance) const {
  return extremes_[substance_slot(substance)];
}

std::size_t IndexedDataset::flux_column(const std::string& substance) const {
  const std::size_t s = substance_slot(substance);
  if (s >= kFluxColumns) {
    throw UnknownSubstanceError("substance '" + substance + "' has no flux column");
  }
  return s;
}

const std::string& IndexedDataset::color_of(int genotype) const {
  return species_.at(species_index_.at(genotype)).color;
}

std::size_t IndexedDataset::densest_time_rows() const {
  std::size_t best = 0;
  for (const auto& r : rows_) best = std::max(best, r.size());
  return best;
}

void assemble_frame_into(Frame& frame, const IndexedDataset& data, long long t,
                         const FrameSelection& selection) {
  // Resolve everything that can fail before touching the output.
  const auto rows = data.rows_at(t);
  std::optional<std::size_t> flux_col;
  if (selection.flux_substance) flux_col = data.flux_column(*selection.flux_substance);
  const ConcentrationGrid* matrix = nullptr;
  std::pair<double, double> range{};
  if (selection.substance) {
    matrix = &data.matrix(*selection.substance, t);
    range = data.extremes(*selection.substance);
  }
  (void)color_scheme(selection.scheme);

  frame.time = t;
  frame.glyphs.resize(rows.size());
  const auto& population = data.pair().population;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = population[rows[i]];
    auto& g = frame.glyphs[i];
    g.x = r.x;
    g.y = r.y;
    g.genotype = r.genotype;
    g.phenotype = r.phenotype;
    g.biomass = r.biomass;
    g.name.assign(r.name);
    g.color.assign(data.color_of(r.genotype));
    g.fluxes = r.fluxes;
    g.outline = flux_col ? classify_flux(r.fluxes[*flux_col]) : Outline::None;
  }

  frame.flux_substance = selection.flux_substance;
  if (matrix) {
    frame.active_substance = selection.substance;
    if (!frame.mesh) frame.mesh.emplace();
    build_heatmap_mesh_into(*frame.mesh, *matrix, selection.mode, selection.height_scale, range);
    frame.legend = Legend{*selection.substance, range.first, range.second, selection.scheme};
  } else {
    frame.active_substance.reset();
    frame.mesh.reset();
    frame.legend.reset();
  }
}

Frame assemble_frame(const IndexedDataset& data, long long t, const FrameSelection& selection) {
  Frame frame;
  assemble_frame_into(frame, data, t, selection);
  return frame;
}

}  // namespace microlab
