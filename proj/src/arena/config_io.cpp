#include "microlab/arena/config_io.hpp"

#include <fstream>

#include "microlab/metabolic/model_io.hpp"

namespace microlab {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SimulationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SimulationError("cannot parse " + path.string() + ": " + e.what());
  }
}

}  // namespace

SimulationConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  SimulationConfig cfg;
  try {
    cfg.width = doc.value("width", cfg.width);
    cfg.height = doc.value("height", cfg.height);
    cfg.dt = doc.value("dt", cfg.dt);
    cfg.steps = doc.value("steps", cfg.steps);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.diffusion_substeps = doc.value("diffusion_substeps", cfg.diffusion_substeps);
    cfg.initial_biomass = doc.value("initial_biomass_fg", cfg.initial_biomass);
    cfg.physical.cell_volume_l = doc.value("cell_volume_l", cfg.physical.cell_volume_l);
    cfg.physical.gdw_per_fg = doc.value("gdw_per_fg", cfg.physical.gdw_per_fg);

    // Thresholds default to multiples of the initial biomass.
    cfg.lifecycle.division_threshold = 2.0 * cfg.initial_biomass;
    cfg.lifecycle.death_threshold = 0.25 * cfg.initial_biomass;
    if (auto it = doc.find("lifecycle"); it != doc.end()) {
      const json& lc = *it;
      cfg.lifecycle.division_threshold =
          lc.value("division_threshold_fg", cfg.lifecycle.division_threshold);
      cfg.lifecycle.death_threshold = lc.value("death_threshold_fg", cfg.lifecycle.death_threshold);
      cfg.lifecycle.p_move = lc.value("p_move", cfg.lifecycle.p_move);
      cfg.lifecycle.starvation_limit = lc.value("starvation_limit", cfg.lifecycle.starvation_limit);
    }

    for (const auto& s : doc.value("substances", json::array())) {
      SubstanceInit init;
      init.name = s.at("name").get<std::string>();
      init.diffusivity = s.value("diffusivity", 0.0);
      const json& initial = s.at("initial");
      if (initial.is_number()) {
        init.initial = initial.get<double>();
      } else {
        const json& g = initial.at("gradient");
        init.gradient_axis = g.value("axis", "x");
        init.initial = g.at("from").get<double>();
        init.gradient_to = g.at("to").get<double>();
      }
      cfg.substances.push_back(std::move(init));
    }

    for (const auto& s : doc.value("species", json::array())) {
      SpeciesInit init;
      init.spec.name = s.at("name").get<std::string>();
      init.spec.color = s.value("color", "#FFFFFF");
      init.count = s.value("count", std::size_t{0});
      if (auto m = s.find("model"); m != s.end()) {
        init.spec.model = model_from_json(*m);
      } else {
        init.spec.model = load_model(base_dir / s.at("model_file").get<std::string>());
      }
      const json kinetics = s.value("kinetics", json::object());
      for (const auto& [reaction, kin] : kinetics.items()) {
        init.spec.kinetics[reaction] =
            UptakeKinetics{kin.at("vmax").get<double>(), kin.at("km").get<double>()};
      }
      cfg.species.push_back(std::move(init));
    }
  } catch (const json::exception& e) {
    throw SimulationError(std::string("malformed simulation config: ") + e.what());
  }
  return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_json(path), path.parent_path());
}

json trace_to_json(const SimulationTrace& trace) {
  json doc;
  doc["width"] = trace.width;
  doc["height"] = trace.height;
  doc["dt"] = trace.dt;
  auto& species = doc["species"] = json::array();
  for (const auto& s : trace.species) {
    species.push_back({{"genotype", s.genotype}, {"name", s.name}, {"color", s.color}});
  }
  auto& snaps = doc["snapshots"] = json::array();
  for (const auto& snap : trace.snapshots) {
    json agents = json::array();
    for (const auto& a : snap.agents) {
      agents.push_back({{"x", a.x},
                        {"y", a.y},
                        {"genotype", a.genotype},
                        {"biomass", a.biomass},
                        {"phenotype", a.phenotype},
                        {"starvation_steps", a.starvation_steps},
                        {"fluxes", a.last_fluxes}});
    }
    json fields = json::array();
    for (const auto& f : snap.fields) {
      fields.push_back({{"name", f.name},
                        {"diffusivity", f.diffusivity},
                        {"width", f.concentrations.width()},
                        {"height", f.concentrations.height()},
                        {"values", f.concentrations.values()}});
    }
    snaps.push_back(
        {{"step", snap.step}, {"time", snap.time}, {"agents", agents}, {"fields", fields}});
  }
  if (!trace.config_echo.empty()) doc["config"] = json::parse(trace.config_echo);
  return doc;
}

SimulationTrace trace_from_json(const json& doc) {
  SimulationTrace trace;
  try {
    trace.width = doc.at("width").get<std::size_t>();
    trace.height = doc.at("height").get<std::size_t>();
    trace.dt = doc.value("dt", 1.0);
    for (const auto& s : doc.at("species")) {
      trace.species.push_back({s.at("genotype").get<int>(), s.at("name").get<std::string>(),
                               s.value("color", "#FFFFFF")});
    }
    for (const auto& js : doc.at("snapshots")) {
      Snapshot snap;
      snap.step = js.at("step").get<std::size_t>();
      snap.time = js.at("time").get<double>();
      for (const auto& ja : js.at("agents")) {
        Agent a;
        a.x = ja.at("x").get<int>();
        a.y = ja.at("y").get<int>();
        a.genotype = ja.at("genotype").get<int>();
        a.biomass = ja.at("biomass").get<double>();
        a.phenotype = ja.at("phenotype").get<int>();
        a.starvation_steps = ja.value("starvation_steps", 0);
        a.last_fluxes = ja.value("fluxes", std::map<std::string, double>{});
        snap.agents.push_back(std::move(a));
      }
      for (const auto& jf : js.at("fields")) {
        SubstanceField f;
        f.name = jf.at("name").get<std::string>();
        f.diffusivity = jf.value("diffusivity", 0.0);
        f.concentrations = ConcentrationGrid(jf.at("width").get<std::size_t>(),
                                             jf.at("height").get<std::size_t>());
        f.concentrations.values() = jf.at("values").get<std::vector<double>>();
        if (f.concentrations.values().size() != f.concentrations.width() * f.concentrations.height()) {
          throw SimulationError("field '" + f.name + "' has the wrong number of values");
        }
        snap.fields.push_back(std::move(f));
      }
      trace.snapshots.push_back(std::move(snap));
    }
    if (auto it = doc.find("config"); it != doc.end()) trace.config_echo = it->dump();
  } catch (const json::exception& e) {
    throw SimulationError(std::string("malformed trace document: ") + e.what());
  }
  return trace;
}

void save_trace(const SimulationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SimulationError("cannot write " + path.string());
  out << trace_to_json(trace).dump() << '\n';
}

SimulationTrace load_trace(const std::filesystem::path& path) {
  return trace_from_json(read_json(path));
}

}  // namespace microlab
