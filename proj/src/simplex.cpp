#include "cubelab/simplex.hpp"

#include <cstddef>

#include "cubelab/errors.hpp"

namespace cubelab {

FeasibilityResult solve_equality_feasibility(
    std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs) {
  const std::size_t m = rhs.size();
  if (rows.size() != m) throw GuardError("row/rhs count mismatch");
  const std::size_t n = m == 0 ? 0 : rows[0].size();
  for (const auto& row : rows) {
    if (row.size() != n) throw GuardError("ragged constraint matrix");
  }
  if (m == 0) return FeasibilityResult{true, std::vector<Rational>(n, 0)};

  // Normalise b >= 0.
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(rhs[i]) < 0) {
      rhs[i] = -rhs[i];
      for (auto& a : rows[i]) a = -a;
    }
  }

  // Tableau: columns 0..n-1 original, n..n+m-1 artificial, rhs kept apart.
  // basis[i] = column currently basic in row i (initially artificial i).
  const std::size_t cols = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = rows[i][j];
    t[i][n + i] = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Phase-one objective: minimise sum of artificials.  With the artificial
  // basis, the reduced profit of column j is z_j - c_j = sum_i t[i][j] - c_j
  // (c_j = 1 on artificials, 0 elsewhere); a positive value improves.
  std::vector<Rational> profit(cols, 0);
  Rational objective = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < m; ++i) profit[j] += t[i][j];
    if (j >= n) profit[j] -= 1;
  }
  for (std::size_t i = 0; i < m; ++i) objective += rhs[i];

  for (;;) {
    // Bland: entering column = smallest index with positive reduced profit.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(profit[j]) > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;  // optimal

    // Ratio test; Bland tie-break on the smallest basis label.
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rational ratio = rhs[i] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) {
      // Phase-one objective is bounded below by zero, so an unbounded ray is
      // impossible here.
      throw InvariantError("phase-one simplex reported an unbounded ray");
    }

    // Pivot on (leave, enter).
    const Rational pivot = t[leave][enter];
    for (auto& a : t[leave]) a /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(t[leave][j]) != 0) t[i][j] -= f * t[leave][j];
      }
      rhs[i] -= f * rhs[leave];
    }
    const Rational pf = profit[enter];
    if (sgn(pf) != 0) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(t[leave][j]) != 0) profit[j] -= pf * t[leave][j];
      }
      objective -= pf * rhs[leave];
    }
    basis[leave] = enter;
  }

  FeasibilityResult result;
  result.feasible = (sgn(objective) == 0);
  if (result.feasible) {
    result.point.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) result.point[basis[i]] = rhs[i];
    }
  }
  return result;
}

}  // namespace cubelab
