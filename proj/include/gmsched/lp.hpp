#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace gmsched {

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct LinearRow {
  std::vector<std::pair<std::size_t, double>> coeffs;  // (variable, coefficient)
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// Rows over variables x_0..x_{n-1}, all implicitly constrained to x >= 0.
struct LinearSystem {
  std::size_t variable_count = 0;
  std::vector<LinearRow> rows;
};

enum class LpStatus { Feasible, Infeasible, Marginal };

struct LpOptions {
  double tol = 1e-7;
  /// Phase-one residuals in (tol, marginal_band] are reported as Marginal.
  double marginal_band = 1e-5;
  std::size_t max_pivots = 200000;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> point;  // set when Feasible
  double residual = 0.0;      // optimal phase-one objective (total artificial mass)
  double max_violation = 0.0;
  std::size_t pivots = 0;
};

/// Dense two-phase-style feasibility simplex (phase one only) with Bland's
/// rule. Deterministic for identical input. Throws SolverFailure if the pivot
/// limit is hit or a returned point does not satisfy the rows within tol.
LpResult lp_feasible(const LinearSystem& system, const LpOptions& options = {});

double max_row_violation(const LinearSystem& system, const std::vector<double>& x);

}  // namespace gmsched
