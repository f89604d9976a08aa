#include "gmac/linear_program.hpp"

#include <algorithm>
#include <cmath>

#include "gmac/errors.hpp"

namespace gmac {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kPivotTol = 1e-11;

// Standard-form tableau: rows = constraints (all equalities with rhs >= 0),
// columns = structural + slack/surplus + artificial variables.
struct Tableau {
  std::vector<std::vector<double>> a;  // m x n
  std::vector<double> rhs;             // m
  std::vector<int> basis;              // m, column index basic in each row
  int ncols = 0;

  void pivot(int row, int col) {
    double p = a[row][col];
    for (double& v : a[row]) v /= p;
    rhs[row] /= p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if ((int)r == row) continue;
      double f = a[r][col];
      if (f == 0.0) continue;
      for (int c = 0; c < ncols; ++c) a[r][c] -= f * a[row][c];
      a[r][col] = 0.0;
      rhs[r] -= f * rhs[row];
    }
    basis[row] = col;
  }
};

// Bland's rule simplex on min c.x over the tableau. Returns false if
// unbounded. Only columns with allowed[c] may enter.
bool simplex_min(Tableau& t, const std::vector<double>& cost,
                 const std::vector<char>& allowed) {
  const int m = (int)t.a.size();
  for (;;) {
    // reduced costs: c_j - c_B . B^-1 A_j ; tableau rows are already B^-1 A
    std::vector<double> y(m);
    for (int r = 0; r < m; ++r) y[r] = cost[t.basis[r]];
    int enter = -1;
    for (int c = 0; c < t.ncols && enter < 0; ++c) {
      if (!allowed[c]) continue;
      double red = cost[c];
      for (int r = 0; r < m; ++r) red -= y[r] * t.a[r][c];
      if (red < -kFeasTol) enter = c;  // Bland: lowest index
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < m; ++r) {
      if (t.a[r][enter] > kPivotTol) {
        double ratio = t.rhs[r] / t.a[r][enter];
        if (leave < 0 || ratio < best - kPivotTol ||
            (std::abs(ratio - best) <= kPivotTol && t.basis[r] < t.basis[leave]))
          leave = r, best = ratio;
      }
    }
    if (leave < 0) return false;  // unbounded
    t.pivot(leave, enter);
  }
}

}  // namespace

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (n == 0) throw domain_error("LinearProgram: empty objective");
  for (const auto& row : ineq_a)
    if (row.size() != n) throw domain_error("LinearProgram: inequality arity mismatch");
  if (ineq_a.size() != ineq_b.size())
    throw domain_error("LinearProgram: inequality rhs count mismatch");
  for (const auto& row : eq_a)
    if (row.size() != n) throw domain_error("LinearProgram: equality arity mismatch");
  if (eq_a.size() != eq_b.size())
    throw domain_error("LinearProgram: equality rhs count mismatch");
  if (!lower_bounds.empty() && lower_bounds.size() != n)
    throw domain_error("LinearProgram: lower bound count mismatch");
}

LpResult lp_solve(const LinearProgram& lp) {
  lp.validate();
  const int n = (int)lp.objective.size();
  const int mi = (int)lp.ineq_a.size();
  const int me = (int)lp.eq_a.size();
  const int m = mi + me;

  std::vector<double> lb = lp.lower_bounds.empty() ? std::vector<double>(n, 0.0)
                                                   : lp.lower_bounds;

  // Shift x' = x - lb, x' >= 0; adjust right-hand sides.
  std::vector<double> bi(lp.ineq_b), be(lp.eq_b);
  for (int r = 0; r < mi; ++r)
    for (int c = 0; c < n; ++c) bi[r] -= lp.ineq_a[r][c] * lb[c];
  for (int r = 0; r < me; ++r)
    for (int c = 0; c < n; ++c) be[r] -= lp.eq_a[r][c] * lb[c];

  // Columns: n structural, mi slack, then artificials as needed.
  Tableau t;
  t.a.assign(m, {});
  t.rhs.assign(m, 0.0);
  t.basis.assign(m, -1);
  int ncols = n + mi;
  std::vector<int> art_rows;
  for (int r = 0; r < m; ++r) {
    bool needs_art;
    if (r < mi) {
      needs_art = bi[r] < 0.0;  // slack would be negative
    } else {
      needs_art = true;
    }
    if (needs_art) art_rows.push_back(r);
  }
  const int nart = (int)art_rows.size();
  t.ncols = ncols + nart;

  for (int r = 0; r < m; ++r) {
    t.a[r].assign(t.ncols, 0.0);
    if (r < mi) {
      double sign = bi[r] < 0.0 ? -1.0 : 1.0;
      for (int c = 0; c < n; ++c) t.a[r][c] = sign * lp.ineq_a[r][c];
      t.a[r][n + r] = sign;  // slack
      t.rhs[r] = sign * bi[r];
    } else {
      int er = r - mi;
      double sign = be[er] < 0.0 ? -1.0 : 1.0;
      for (int c = 0; c < n; ++c) t.a[r][c] = sign * lp.eq_a[er][c];
      t.rhs[r] = sign * be[er];
    }
  }
  int next_art = ncols;
  for (int r : art_rows) {
    t.a[r][next_art] = 1.0;
    t.basis[r] = next_art;
    ++next_art;
  }
  for (int r = 0; r < mi; ++r)
    if (t.basis[r] < 0) t.basis[r] = n + r;

  std::vector<char> allowed(t.ncols, 1);

  // Phase 1: minimize the artificial sum.
  if (nart > 0) {
    std::vector<double> cost1(t.ncols, 0.0);
    for (int c = ncols; c < t.ncols; ++c) cost1[c] = 1.0;
    if (!simplex_min(t, cost1, allowed))
      throw numerical_error("lp_solve: phase-1 unbounded (malformed program)");
    double art_sum = 0.0;
    for (int r = 0; r < m; ++r)
      if (t.basis[r] >= ncols) art_sum += t.rhs[r];
    if (art_sum > 1e-7) return {LpStatus::infeasible, {}, 0.0};
    // Drive lingering zero-level artificials out of the basis.
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < ncols) continue;
      int col = -1;
      for (int c = 0; c < ncols && col < 0; ++c)
        if (std::abs(t.a[r][c]) > kPivotTol) col = c;
      if (col >= 0) t.pivot(r, col);
    }
    for (int c = ncols; c < t.ncols; ++c) allowed[c] = 0;
  }

  // Phase 2: minimize -objective (i.e., maximize the objective).
  std::vector<double> cost2(t.ncols, 0.0);
  for (int c = 0; c < n; ++c) cost2[c] = -lp.objective[c];
  if (!simplex_min(t, cost2, allowed))
    throw numerical_error("lp_solve: unbounded objective (malformed EXIT constraints)");

  LpResult res;
  res.status = LpStatus::optimal;
  res.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (t.basis[r] < n) res.x[t.basis[r]] = t.rhs[r];
  for (int c = 0; c < n; ++c) res.x[c] += lb[c];
  res.objective = 0.0;
  for (int c = 0; c < n; ++c) res.objective += lp.objective[c] * res.x[c];
  return res;
}

}  // namespace gmac
