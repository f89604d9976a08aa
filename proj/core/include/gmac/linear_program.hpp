#pragma once

#include <vector>

namespace gmac {

// maximize objective . x
// subject to  ineq_a x <= ineq_b,  eq_a x = eq_b,  x >= lower_bounds
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> ineq_a;
  std::vector<double> ineq_b;
  std::vector<std::vector<double>> eq_a;
  std::vector<double> eq_b;
  std::vector<double> lower_bounds;  // empty means all-zero

  void validate() const;  // throws domain_error on arity mismatches
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Dense two-phase simplex, Bland's rule. Feasibility tolerance 1e-9.
// Throws numerical_error on unbounded programs (malformed constraints).
LpResult lp_solve(const LinearProgram& lp);

}  // namespace gmac
