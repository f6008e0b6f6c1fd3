#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace microlab {

/// Base class for every error raised while building or evaluating a model.
class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DuplicateIdError : public ModelError {
public:
  using ModelError::ModelError;
};

class UnknownMetaboliteError : public ModelError {
public:
  using ModelError::ModelError;
};

class BadNameError : public ModelError {
public:
  using ModelError::ModelError;
};

struct Metabolite {
  std::string id;
  std::string name;
  bool external = false;

  /// Display name, falling back to the id.
  [[nodiscard]] const std::string& label() const { return name.empty() ? id : name; }
};

struct Reaction {
  std::string id;
  /// Signed coefficient per metabolite id (negative = consumed).
  std::map<std::string, double> stoichiometry;
  double lower_bound = 0.0;  // mmol/(gDW*h)
  double upper_bound = 0.0;
  double objective_coefficient = 0.0;
};

/// Dense metabolites x reactions matrix, row-major.
class StoichiometricMatrix {
public:
  StoichiometricMatrix() = default;
  StoichiometricMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const StoichiometricMatrix&, const StoichiometricMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class MetabolicModel {
public:
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<Metabolite>& metabolites() const { return metabolites_; }
  [[nodiscard]] const std::vector<Reaction>& reactions() const { return reactions_; }

  [[nodiscard]] std::optional<std::size_t> metabolite_index(const std::string& id) const;
  [[nodiscard]] std::optional<std::size_t> reaction_index(const std::string& id) const;

  /// An exchange reaction touches exactly one metabolite, and that metabolite is external.
  [[nodiscard]] bool is_exchange(std::size_t reaction) const;
  /// The external metabolite moved by an exchange reaction.
  [[nodiscard]] const Metabolite& exchanged_metabolite(std::size_t reaction) const;
  [[nodiscard]] std::vector<std::size_t> exchange_reactions() const;

  friend MetabolicModel build_model(std::vector<Metabolite> metabolites,
                                    std::vector<Reaction> reactions, std::string name);

private:
  std::string name_;
  std::vector<Metabolite> metabolites_;
  std::vector<Reaction> reactions_;
  std::map<std::string, std::size_t> metabolite_lookup_;
  std::map<std::string, std::size_t> reaction_lookup_;
};

/// True when `name` has exactly three nonempty underscore-separated fragments
/// (genus_species_strain).
[[nodiscard]] bool is_genus_species_strain(const std::string& name);

/// Validates and assembles a model. Ordering of metabolites and reactions is preserved.
/// Throws DuplicateIdError, UnknownMetaboliteError, BadNameError or ModelError.
MetabolicModel build_model(std::vector<Metabolite> metabolites, std::vector<Reaction> reactions,
                           std::string name);

[[nodiscard]] StoichiometricMatrix stoichiometric_matrix(const MetabolicModel& model);

/// Entry (i, j) is the coefficient of metabolites[i] in reactions[j]; unknown keys are ignored.
[[nodiscard]] StoichiometricMatrix stoichiometric_matrix(std::span<const Metabolite> metabolites,
                                                         std::span<const Reaction> reactions);

}  // namespace microlab
