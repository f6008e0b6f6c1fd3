#include "microlab/viz/wire.hpp"

#include "microlab/dataset/export.hpp"

namespace microlab {

using nlohmann::json;

json mesh_to_json(const HeatmapMesh& mesh) {
  json vertices = json::array();
  for (const auto& v : mesh.vertices) {
    vertices.push_back(v[0]);
    vertices.push_back(v[1]);
    vertices.push_back(v[2]);
  }
  json triangles = json::array();
  for (const auto& t : mesh.triangles) {
    triangles.push_back(t[0]);
    triangles.push_back(t[1]);
    triangles.push_back(t[2]);
  }
  return {{"width", mesh.width},
          {"height", mesh.height},
          {"mode", mesh_mode_name(mesh.mode)},
          {"range", {mesh.range_min, mesh.range_max}},
          {"vertices", std::move(vertices)},
          {"triangles", std::move(triangles)},
          {"scalar", mesh.scalar}};
}

json glyph_to_json(const OrganismGlyph& g) {
  return {{"x", g.x},
          {"y", g.y},
          {"genotype", g.genotype},
          {"phenotype", g.phenotype},
          {"biomass", g.biomass},
          {"name", g.name},
          {"color", g.color},
          {"outline", outline_name(g.outline)},
          {"fluxes", g.fluxes}};
}

json frame_to_json(const Frame& frame) {
  json glyphs = json::array();
  for (const auto& g : frame.glyphs) glyphs.push_back(glyph_to_json(g));
  json out = {{"time", frame.time},
              {"glyphs", std::move(glyphs)},
              {"active_substance", nullptr},
              {"flux_substance", nullptr},
              {"mesh", nullptr},
              {"legend", nullptr}};
  if (frame.active_substance) out["active_substance"] = *frame.active_substance;
  if (frame.flux_substance) out["flux_substance"] = *frame.flux_substance;
  if (frame.mesh) out["mesh"] = mesh_to_json(*frame.mesh);
  if (frame.legend) {
    const auto& scheme = color_scheme(frame.legend->scheme);
    out["legend"] = {{"substance", frame.legend->substance},
                     {"min", frame.legend->min},
                     {"max", frame.legend->max},
                     {"scheme", frame.legend->scheme},
                     {"start", scheme.start_hex},
                     {"end", scheme.end_hex}};
  }
  return out;
}

json schemes_to_json() {
  json out = json::array();
  for (std::size_t i = 0; i < kColorSchemes.size(); ++i) {
    out.push_back({{"index", i},
                   {"name", kColorSchemes[i].name},
                   {"start", kColorSchemes[i].start_hex},
                   {"end", kColorSchemes[i].end_hex}});
  }
  return out;
}

json metadata_to_json(const IndexedDataset& data) {
  json species = json::array();
  for (const auto& s : data.species()) {
    species.push_back({{"genotype", s.genotype}, {"name", s.name}, {"color", s.color}});
  }
  json extremes = json::object();
  for (const auto& name : data.substances()) {
    const auto [lo, hi] = data.extremes(name);
    extremes[name] = {{"min", lo}, {"max", hi}};
  }
  const auto& subs = data.substances();
  const std::vector<std::string> flux_subs(
      subs.begin(), subs.begin() + static_cast<std::ptrdiff_t>(std::min(subs.size(), kFluxColumns)));
  return {{"times", data.times()},
          {"substances", subs},
          {"flux_columns", flux_columns(flux_subs)},
          {"species", std::move(species)},
          {"dims", {{"x", data.width()}, {"y", data.height()}}},
          {"rows", data.pair().population.size()},
          {"extremes", std::move(extremes)},
          {"schemes", schemes_to_json()},
          {"default_scheme", kDefaultScheme}};
}

std::string serialize_frame(const Frame& frame) { return frame_to_json(frame).dump(); }
std::string serialize_mesh(const HeatmapMesh& mesh) { return mesh_to_json(mesh).dump(); }

}  // namespace microlab
