#include "gmsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gmsched/common.hpp"

namespace gmsched {

double max_row_violation(const LinearSystem& system, const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (const auto& row : system.rows) {
    double lhs = 0.0;
    for (const auto& [var, coeff] : row.coeffs) lhs += coeff * x[var];
    double violation = 0.0;
    switch (row.sense) {
      case RowSense::LessEqual: violation = lhs - row.rhs; break;
      case RowSense::GreaterEqual: violation = row.rhs - lhs; break;
      case RowSense::Equal: violation = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kZero = 1e-13;

class PhaseOne {
 public:
  PhaseOne(const LinearSystem& system, const LpOptions& options)
      : options_(options), rows_(system.rows.size()), structural_(system.variable_count) {
    // Column layout: structural | one slack or surplus per inequality | one
    // artificial per row lacking a slack with coefficient +1.
    std::vector<RowSense> sense(rows_);
    std::vector<double> sign(rows_, 1.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      sense[r] = system.rows[r].sense;
      if (system.rows[r].rhs < 0.0) {
        sign[r] = -1.0;
        if (sense[r] == RowSense::LessEqual) sense[r] = RowSense::GreaterEqual;
        else if (sense[r] == RowSense::GreaterEqual) sense[r] = RowSense::LessEqual;
      }
    }
    std::size_t slacks = 0, artificials = 0;
    for (auto s : sense) {
      if (s != RowSense::Equal) ++slacks;
      if (s != RowSense::LessEqual) ++artificials;
    }
    first_artificial_ = structural_ + slacks;
    cols_ = first_artificial_ + artificials;
    width_ = cols_ + 1;
    tableau_.assign(rows_ * width_, 0.0);
    basis_.assign(rows_, 0);
    cost_.assign(cols_, 0.0);

    std::size_t next_slack = structural_, next_artificial = first_artificial_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& row = system.rows[r];
      for (const auto& [var, coeff] : row.coeffs) {
        if (var >= structural_) {
          throw std::invalid_argument("row " + std::to_string(r) + " references variable " +
                                      std::to_string(var) + " out of range");
        }
        at(r, var) += sign[r] * coeff;
      }
      at(r, cols_) = sign[r] * row.rhs;
      if (sense[r] == RowSense::LessEqual) {
        at(r, next_slack) = 1.0;
        basis_[r] = next_slack++;
      } else {
        if (sense[r] == RowSense::GreaterEqual) at(r, next_slack++) = -1.0;
        at(r, next_artificial) = 1.0;
        cost_[next_artificial] = 1.0;
        basis_[r] = next_artificial++;
      }
    }
    // Reduced costs d_j = c_j - sum over artificial-basic rows of a_rj.
    reduced_ = cost_;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      for (std::size_t c = 0; c < cols_; ++c) reduced_[c] -= at(r, c);
    }
  }

  LpResult solve() {
    LpResult result;
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (reduced_[c] < -kPivotEps) {
          entering = c;
          break;
        }
      }
      if (entering == cols_) break;
      std::size_t leaving = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, entering);
        if (a <= kPivotEps) continue;
        const double ratio = at(r, cols_) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && leaving < rows_ && basis_[r] < basis_[leaving])) {
          best_ratio = std::min(ratio, best_ratio);
          leaving = r;
        }
      }
      if (leaving == rows_) throw SolverFailure("phase-one simplex reported an unbounded ray");
      pivot(leaving, entering);
      if (++result.pivots > options_.max_pivots) {
        throw SolverFailure("simplex exceeded " + std::to_string(options_.max_pivots) + " pivots");
      }
    }
    double residual = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] >= first_artificial_) residual += std::max(0.0, at(r, cols_));
    }
    result.residual = residual;
    if (result.residual > options_.tol) {
      result.status =
          result.residual <= options_.marginal_band ? LpStatus::Marginal : LpStatus::Infeasible;
      return result;
    }
    result.point.assign(structural_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) result.point[basis_[r]] = std::max(0.0, at(r, cols_));
    }
    result.status = LpStatus::Feasible;
    return result;
  }

 private:
  double& at(std::size_t r, std::size_t c) { return tableau_[r * width_ + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c < width_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) {
        double& v = at(r, c);
        v -= f * at(pr, c);
        if (std::abs(v) < kZero) v = 0.0;
      }
      at(r, pc) = 0.0;
    }
    const double f = reduced_[pc];
    for (std::size_t c = 0; c < cols_; ++c) {
      reduced_[c] -= f * at(pr, c);
      if (std::abs(reduced_[c]) < kZero) reduced_[c] = 0.0;
    }
    reduced_[pc] = 0.0;
    basis_[pr] = pc;
  }

  LpOptions options_;
  std::size_t rows_;
  std::size_t structural_;
  std::size_t first_artificial_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::vector<double> tableau_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
};

}  // namespace

LpResult lp_feasible(const LinearSystem& system, const LpOptions& options) {
  for (const auto& row : system.rows) {
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("nonfinite right-hand side");
    for (const auto& [var, coeff] : row.coeffs) {
      if (!std::isfinite(coeff)) throw std::invalid_argument("nonfinite coefficient");
    }
  }
  LpResult result = PhaseOne(system, options).solve();
  if (result.status == LpStatus::Feasible) {
    result.max_violation = max_row_violation(system, result.point);
    if (result.max_violation > options.tol) {
      throw SolverFailure("simplex point violates a row by " + std::to_string(result.max_violation));
    }
  }
  return result;
}

}  // namespace gmsched
