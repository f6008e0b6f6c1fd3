#include "microlab/metabolic/model.hpp"

#include <cmath>

namespace microlab {

bool is_genus_species_strain(const std::string& name) {
  std::size_t fragments = 1;
  std::size_t fragment_length = 0;
  for (char c : name) {
    if (c == '_') {
      if (fragment_length == 0) return false;
      ++fragments;
      fragment_length = 0;
    } else {
      ++fragment_length;
    }
  }
  return fragments == 3 && fragment_length > 0;
}

std::optional<std::size_t> MetabolicModel::metabolite_index(const std::string& id) const {
  if (auto it = metabolite_lookup_.find(id); it != metabolite_lookup_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> MetabolicModel::reaction_index(const std::string& id) const {
  if (auto it = reaction_lookup_.find(id); it != reaction_lookup_.end()) return it->second;
  return std::nullopt;
}

bool MetabolicModel::is_exchange(std::size_t reaction) const {
  const auto& st = reactions_.at(reaction).stoichiometry;
  if (st.size() != 1) return false;
  return metabolites_[metabolite_lookup_.at(st.begin()->first)].external;
}

const Metabolite& MetabolicModel::exchanged_metabolite(std::size_t reaction) const {
  if (!is_exchange(reaction)) {
    throw ModelError("reaction '" + reactions_.at(reaction).id + "' is not an exchange reaction");
  }
  return metabolites_[metabolite_lookup_.at(reactions_[reaction].stoichiometry.begin()->first)];
}

std::vector<std::size_t> MetabolicModel::exchange_reactions() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < reactions_.size(); ++j)
    if (is_exchange(j)) out.push_back(j);
  return out;
}

MetabolicModel build_model(std::vector<Metabolite> metabolites, std::vector<Reaction> reactions,
                           std::string name) {
  if (metabolites.empty() || reactions.empty()) {
    throw ModelError("model needs at least one metabolite and one reaction");
  }
  if (!is_genus_species_strain(name)) {
    throw BadNameError("model name '" + name + "' is not of the form genus_species_strain");
  }

  MetabolicModel model;
  for (std::size_t i = 0; i < metabolites.size(); ++i) {
    const auto& m = metabolites[i];
    if (m.id.empty()) throw ModelError("metabolite with empty id");
    if (!model.metabolite_lookup_.emplace(m.id, i).second) {
      throw DuplicateIdError("duplicate metabolite id '" + m.id + "'");
    }
  }

  bool has_objective = false;
  for (std::size_t j = 0; j < reactions.size(); ++j) {
    const auto& r = reactions[j];
    if (r.id.empty()) throw ModelError("reaction with empty id");
    if (!model.reaction_lookup_.emplace(r.id, j).second) {
      throw DuplicateIdError("duplicate reaction id '" + r.id + "'");
    }
    if (r.stoichiometry.empty()) throw ModelError("reaction '" + r.id + "' has no stoichiometry");
    for (const auto& [met, coef] : r.stoichiometry) {
      if (!model.metabolite_lookup_.contains(met)) {
        throw UnknownMetaboliteError("reaction '" + r.id + "' references unknown metabolite '" +
                                     met + "'");
      }
      if (!std::isfinite(coef)) {
        throw ModelError("reaction '" + r.id + "' has a non-finite coefficient");
      }
    }
    if (std::isnan(r.lower_bound) || std::isnan(r.upper_bound) || r.lower_bound > r.upper_bound) {
      throw ModelError("reaction '" + r.id + "' has lower_bound > upper_bound");
    }
    if (!std::isfinite(r.objective_coefficient)) {
      throw ModelError("reaction '" + r.id + "' has a non-finite objective coefficient");
    }
    has_objective = has_objective || r.objective_coefficient != 0.0;
  }
  if (!has_objective) throw ModelError("model '" + name + "' has no objective reaction");

  model.name_ = std::move(name);
  model.metabolites_ = std::move(metabolites);
  model.reactions_ = std::move(reactions);
  return model;
}

StoichiometricMatrix stoichiometric_matrix(std::span<const Metabolite> metabolites,
                                           std::span<const Reaction> reactions) {
  StoichiometricMatrix s(metabolites.size(), reactions.size());
  for (std::size_t i = 0; i < metabolites.size(); ++i) {
    for (std::size_t j = 0; j < reactions.size(); ++j) {
      const auto& st = reactions[j].stoichiometry;
      if (auto it = st.find(metabolites[i].id); it != st.end()) s(i, j) = it->second;
    }
  }
  return s;
}

StoichiometricMatrix stoichiometric_matrix(const MetabolicModel& model) {
  return stoichiometric_matrix(model.metabolites(), model.reactions());
}

}  // namespace microlab
