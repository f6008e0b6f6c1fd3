#pragma once

#include <filesystem>

#include <json.hpp>

#include "microlab/metabolic/model.hpp"

namespace microlab {

/// Reads a model from its JSON form:
///
///   { "name": "Genus_species_strain",
///     "metabolites": [ {"id": "glc", "name": "Glucose", "external": true}, ... ],
///     "reactions": [ {"id": "EX_glc", "stoichiometry": {"glc": -1},
///                     "lower_bound": -10, "upper_bound": 0, "objective": 0}, ... ] }
///
/// "name" and "external" on metabolites are optional; "objective" defaults to 0.
[[nodiscard]] MetabolicModel model_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json model_to_json(const MetabolicModel& model);
[[nodiscard]] MetabolicModel load_model(const std::filesystem::path& path);

}  // namespace microlab
