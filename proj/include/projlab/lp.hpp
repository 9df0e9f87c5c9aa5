// Dense two-phase primal simplex with a lexicographic ratio test.
//
// Problems are given as
//     minimize c'x   subject to   A_ub x <= b_ub,  A_eq x = b_eq,
// with x free (internally split into nonnegative parts) unless `nonneg`
// requests x >= 0 directly. Rows are scaled by powers of two before solving
// so the scaling is exact in binary floating point. Optimal results carry
// feasibility and duality residuals; callers treat residuals above their
// tolerance as solver failure.
#pragma once

#include "projlab/linalg.hpp"

namespace projlab {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpProblem {
  Matrix a_ub;  // may have 0 rows
  Vector b_ub;
  Matrix a_eq;  // may have 0 rows
  Vector b_eq;
  Vector c;
  bool nonneg = false;  // constrain x >= 0 instead of leaving x free
};

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  Vector x;
  double objective = 0.0;
  double feasibility_residual = 0.0;  // max constraint violation at x
  double duality_gap = 0.0;           // |primal - dual| objective gap
  Vector dual_ub;  // multipliers for A_ub rows (>= 0, for lower-bound certificates)
  Vector dual_eq;  // multipliers for A_eq rows (free sign)
  Index iterations = 0;
};

struct LpOptions {
  double pivot_tol = 1e-10;
  double cost_tol = 1e-9;
  Index max_iterations = 0;  // 0: automatic (50 * (rows + cols) + 2000)
};

LpResult solve_lp(const LpProblem& p, const LpOptions& opts = {});

const char* to_string(LpStatus s);

}  // namespace projlab
