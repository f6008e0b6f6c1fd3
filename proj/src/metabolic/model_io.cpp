#include "microlab/metabolic/model_io.hpp"

#include <fstream>

namespace microlab {

MetabolicModel model_from_json(const nlohmann::json& doc) {
  try {
    std::vector<Metabolite> metabolites;
    for (const auto& m : doc.at("metabolites")) {
      metabolites.push_back(Metabolite{m.at("id").get<std::string>(), m.value("name", ""),
                                       m.value("external", false)});
    }
    std::vector<Reaction> reactions;
    for (const auto& r : doc.at("reactions")) {
      Reaction reaction;
      reaction.id = r.at("id").get<std::string>();
      for (const auto& [met, coef] : r.at("stoichiometry").items()) {
        reaction.stoichiometry[met] = coef.get<double>();
      }
      reaction.lower_bound = r.at("lower_bound").get<double>();
      reaction.upper_bound = r.at("upper_bound").get<double>();
      reaction.objective_coefficient = r.value("objective", 0.0);
      reactions.push_back(std::move(reaction));
    }
    return build_model(std::move(metabolites), std::move(reactions),
                       doc.at("name").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model document: ") + e.what());
  }
}

nlohmann::json model_to_json(const MetabolicModel& model) {
  nlohmann::json doc;
  doc["name"] = model.name();
  auto& mets = doc["metabolites"] = nlohmann::json::array();
  for (const auto& m : model.metabolites()) {
    mets.push_back({{"id", m.id}, {"name", m.name}, {"external", m.external}});
  }
  auto& rxns = doc["reactions"] = nlohmann::json::array();
  for (const auto& r : model.reactions()) {
    nlohmann::json st = nlohmann::json::object();
    for (const auto& [met, coef] : r.stoichiometry) st[met] = coef;
    rxns.push_back({{"id", r.id},
                    {"stoichiometry", st},
                    {"lower_bound", r.lower_bound},
                    {"upper_bound", r.upper_bound},
                    {"objective", r.objective_coefficient}});
  }
  return doc;
}

MetabolicModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("cannot parse model file " + path.string() + ": " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace microlab
