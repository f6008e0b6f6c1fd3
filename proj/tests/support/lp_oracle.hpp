#pragma once

// Brute-force vertex enumeration for small bounded FBA problems. Independent of the
// simplex implementation: it visits every assignment of reactions to {lower, upper, free}
// and solves the equality system for the free ones with Eigen.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "microlab/metabolic/model.hpp"

namespace microlab::testing {

struct VertexOracleResult {
  bool feasible = false;
  double best_objective = -std::numeric_limits<double>::infinity();
  std::vector<double> best_point;
  std::size_t vertices = 0;
};

inline VertexOracleResult enumerate_vertices(const Eigen::MatrixXd& s, const Eigen::VectorXd& c,
                                             const Eigen::VectorXd& lower,
                                             const Eigen::VectorXd& upper) {
  const auto m = s.rows();
  const auto n = s.cols();
  VertexOracleResult result;
  std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 = lower, 1 = upper, 2 = free
  std::size_t combos = 1;
  for (Eigen::Index j = 0; j < n; ++j) combos *= 3;

  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t rest = code;
    std::vector<Eigen::Index> free;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      state[static_cast<std::size_t>(j)] = static_cast<int>(rest % 3);
      rest /= 3;
      if (state[static_cast<std::size_t>(j)] == 2) free.push_back(j);
      else v(j) = state[static_cast<std::size_t>(j)] == 0 ? lower(j) : upper(j);
    }
    if (static_cast<Eigen::Index>(free.size()) > m) continue;

    Eigen::VectorXd rhs = -(s * v);
    if (!free.empty()) {
      Eigen::MatrixXd sf(m, static_cast<Eigen::Index>(free.size()));
      for (std::size_t k = 0; k < free.size(); ++k) sf.col(static_cast<Eigen::Index>(k)) = s.col(free[k]);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sf);
      lu.setThreshold(1e-10);
      if (lu.rank() != static_cast<Eigen::Index>(free.size())) continue;
      Eigen::VectorXd vf = lu.solve(rhs);
      if ((sf * vf - rhs).cwiseAbs().maxCoeff() > 1e-8) continue;
      for (std::size_t k = 0; k < free.size(); ++k) v(free[k]) = vf(static_cast<Eigen::Index>(k));
    } else if (m > 0 && rhs.cwiseAbs().maxCoeff() > 1e-8) {
      continue;
    }

    bool in_bounds = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (v(j) < lower(j) - 1e-9 || v(j) > upper(j) + 1e-9) in_bounds = false;
    }
    if (!in_bounds) continue;

    ++result.vertices;
    result.feasible = true;
    const double obj = c.dot(v);
    if (obj > result.best_objective) {
      result.best_objective = obj;
      result.best_point.assign(v.data(), v.data() + n);
    }
  }
  return result;
}

inline VertexOracleResult enumerate_vertices(const MetabolicModel& model) {
  const auto& reactions = model.reactions();
  const auto m = static_cast<Eigen::Index>(model.metabolites().size());
  const auto n = static_cast<Eigen::Index>(reactions.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd c(n), lo(n), hi(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& r = reactions[static_cast<std::size_t>(j)];
    for (const auto& [met, coef] : r.stoichiometry) {
      s(static_cast<Eigen::Index>(*model.metabolite_index(met)), j) = coef;
    }
    c(j) = r.objective_coefficient;
    lo(j) = r.lower_bound;
    hi(j) = r.upper_bound;
  }
  return enumerate_vertices(s, c, lo, hi);
}

}  // namespace microlab::testing
