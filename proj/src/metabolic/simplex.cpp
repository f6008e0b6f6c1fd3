#include "microlab/metabolic/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace microlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTolerance = 1e-11;
constexpr double kTieTolerance = 1e-12;

enum class VarState { Basic, AtLower, AtUpper, FreeZero, Fixed };

class Tableau {
public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : m_(lp.a.rows()), n_(lp.a.cols()), total_(n_ + m_), options_(options),
        t_(m_ * total_, 0.0), x_(total_, 0.0), lower_(total_, 0.0), upper_(total_, kInf),
        state_(total_, VarState::AtLower), basis_(m_), row_sign_(m_, 1.0), rhs_(m_, 0.0) {
    pivot_limit_ = options.pivot_limit_factor * (m_ + n_);
    if (pivot_limit_ == 0) pivot_limit_ = options.pivot_limit_factor;

    double scale = 1.0;
    for (std::size_t j = 0; j < n_; ++j) {
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
      if (std::isfinite(lower_[j])) scale = std::max(scale, std::abs(lower_[j]));
      if (std::isfinite(upper_[j])) scale = std::max(scale, std::abs(upper_[j]));
      if (lower_[j] == upper_[j]) {
        state_[j] = VarState::Fixed;
        x_[j] = lower_[j];
      } else if (std::isfinite(lower_[j])) {
        state_[j] = VarState::AtLower;
        x_[j] = lower_[j];
      } else if (std::isfinite(upper_[j])) {
        state_[j] = VarState::AtUpper;
        x_[j] = upper_[j];
      } else {
        state_[j] = VarState::FreeZero;
        x_[j] = 0.0;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) scale = std::max(scale, std::abs(lp.rhs[i]));
    infeasibility_tolerance_ = options.feasibility_tolerance * scale;

    for (std::size_t i = 0; i < m_; ++i) {
      double residual = lp.rhs[i];
      for (std::size_t j = 0; j < n_; ++j) residual -= lp.a(i, j) * x_[j];
      row_sign_[i] = residual >= 0.0 ? 1.0 : -1.0;
      rhs_[i] = row_sign_[i] * lp.rhs[i];
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = row_sign_[i] * lp.a(i, j);
      at(i, n_ + i) = 1.0;
      const std::size_t art = n_ + i;
      basis_[i] = art;
      state_[art] = VarState::Basic;
      x_[art] = std::abs(residual);
    }
    original_ = t_;
  }

  /// Runs one simplex phase to optimality. Returns false when the objective is unbounded.
  bool optimize(const std::vector<double>& cost) {
    std::vector<double> reduced(total_);
    while (true) {
      for (std::size_t j = 0; j < total_; ++j) {
        if (state_[j] == VarState::Basic || state_[j] == VarState::Fixed) {
          reduced[j] = 0.0;
          continue;
        }
        double d = cost[j];
        for (std::size_t i = 0; i < m_; ++i) d -= cost[basis_[i]] * at(i, j);
        reduced[j] = d;
      }

      // Bland: lowest-index improving nonbasic variable enters.
      std::size_t entering = total_;
      double direction = 0.0;
      for (std::size_t j = 0; j < total_ && entering == total_; ++j) {
        const double d = reduced[j];
        switch (state_[j]) {
          case VarState::AtLower:
            if (d > options_.optimality_tolerance) { entering = j; direction = 1.0; }
            break;
          case VarState::AtUpper:
            if (d < -options_.optimality_tolerance) { entering = j; direction = -1.0; }
            break;
          case VarState::FreeZero:
            if (std::abs(d) > options_.optimality_tolerance) {
              entering = j;
              direction = d > 0.0 ? 1.0 : -1.0;
            }
            break;
          default:
            break;
        }
      }
      if (entering == total_) return true;

      if (++iterations_ > pivot_limit_) {
        throw NumericalFailure("simplex exceeded pivot limit of " + std::to_string(pivot_limit_));
      }

      double step = direction > 0.0 ? upper_[entering] - x_[entering]
                                    : x_[entering] - lower_[entering];
      std::size_t leave_row = m_;
      bool leave_to_upper = false;
      double best = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = at(i, entering) * direction;
        const std::size_t var = basis_[i];
        double limit;
        bool to_upper;
        if (alpha > kPivotTolerance) {
          if (!std::isfinite(lower_[var])) continue;
          limit = (x_[var] - lower_[var]) / alpha;
          to_upper = false;
        } else if (alpha < -kPivotTolerance) {
          if (!std::isfinite(upper_[var])) continue;
          limit = (upper_[var] - x_[var]) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        limit = std::max(0.0, limit);
        // Ties go to the lowest-index basic variable.
        if (leave_row == m_ || limit < best - kTieTolerance ||
            (limit <= best + kTieTolerance && var < basis_[leave_row])) {
          best = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }

      if (!std::isfinite(step) && leave_row == m_) return false;

      if (step <= best + kTieTolerance) {
        // Bound flip: the entering variable reaches its opposite bound first.
        move(entering, direction * step);
        state_[entering] = direction > 0.0 ? VarState::AtUpper : VarState::AtLower;
        x_[entering] = direction > 0.0 ? upper_[entering] : lower_[entering];
        continue;
      }

      move(entering, direction * best);
      const std::size_t leaving = basis_[leave_row];
      x_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
      state_[leaving] = lower_[leaving] == upper_[leaving]
                            ? VarState::Fixed
                            : (leave_to_upper ? VarState::AtUpper : VarState::AtLower);
      pivot(leave_row, entering);
    }
  }

  /// Recomputes basic values from the nonbasic ones to shed accumulated drift.
  void refresh_basic_values() {
    std::vector<double> residual(rhs_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < total_; ++j) {
        if (state_[j] != VarState::Basic) residual[i] -= original_[i * total_ + j] * x_[j];
      }
    }
    // Columns of the artificials hold the current basis inverse.
    for (std::size_t r = 0; r < m_; ++r) {
      double value = 0.0;
      for (std::size_t i = 0; i < m_; ++i) value += at(r, n_ + i) * residual[i];
      x_[basis_[r]] = value;
    }
  }

  [[nodiscard]] double artificial_sum() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < m_; ++i) sum += std::abs(x_[n_ + i]);
    return sum;
  }

  void fix_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t art = n_ + i;
      upper_[art] = 0.0;
      if (state_[art] != VarState::Basic) {
        state_[art] = VarState::Fixed;
        x_[art] = 0.0;
      }
    }
  }

  [[nodiscard]] std::size_t structural() const { return n_; }
  [[nodiscard]] std::size_t total() const { return total_; }
  [[nodiscard]] std::size_t iterations() const { return iterations_; }
  [[nodiscard]] double infeasibility_tolerance() const { return infeasibility_tolerance_; }
  [[nodiscard]] const std::vector<double>& values() const { return x_; }

private:
  double& at(std::size_t i, std::size_t j) { return t_[i * total_ + j]; }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return t_[i * total_ + j]; }

  void move(std::size_t entering, double delta) {
    if (delta == 0.0) return;
    x_[entering] += delta;
    for (std::size_t i = 0; i < m_; ++i) x_[basis_[i]] -= at(i, entering) * delta;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    for (std::size_t j = 0; j < total_; ++j) at(row, j) /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < total_; ++j) at(i, j) -= f * at(row, j);
    }
    basis_[row] = col;
    state_[col] = VarState::Basic;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t total_;
  SimplexOptions options_;
  std::vector<double> t_;
  std::vector<double> original_;
  std::vector<double> x_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<VarState> state_;
  std::vector<std::size_t> basis_;
  std::vector<double> row_sign_;
  std::vector<double> rhs_;
  std::size_t iterations_ = 0;
  std::size_t pivot_limit_ = 0;
  double infeasibility_tolerance_ = 0.0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  const std::size_t m = lp.a.rows();
  const std::size_t n = lp.a.cols();
  if (lp.rhs.size() != m || lp.objective.size() != n || lp.lower.size() != n ||
      lp.upper.size() != n) {
    throw std::invalid_argument("linear program dimensions are inconsistent");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lp.lower[j]) || std::isnan(lp.upper[j]) || lp.lower[j] > lp.upper[j]) {
      throw std::invalid_argument("variable " + std::to_string(j) + " has lower > upper");
    }
  }

  Tableau tableau(lp, options);
  LpResult result;

  std::vector<double> phase1(tableau.total(), 0.0);
  for (std::size_t j = n; j < tableau.total(); ++j) phase1[j] = -1.0;
  tableau.optimize(phase1);
  tableau.refresh_basic_values();
  if (tableau.artificial_sum() > tableau.infeasibility_tolerance()) {
    result.status = SolveStatus::Infeasible;
    result.iterations = tableau.iterations();
    return result;
  }

  tableau.fix_artificials();
  std::vector<double> phase2(tableau.total(), 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), phase2.begin());
  const bool bounded = tableau.optimize(phase2);
  result.iterations = tableau.iterations();
  if (!bounded) {
    result.status = SolveStatus::Unbounded;
    return result;
  }
  tableau.refresh_basic_values();

  const auto& values = tableau.values();
  result.x.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t j = 0; j < n; ++j) {
    result.x[j] = std::clamp(result.x[j], lp.lower[j], lp.upper[j]);
    result.objective += lp.objective[j] * result.x[j];
  }
  result.status = SolveStatus::Optimal;
  return result;
}

}  // namespace microlab
