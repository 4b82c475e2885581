#pragma once
// Exact rational feasibility testing for systems  A x = b, x >= 0.
//
// Phase-one simplex over GMP rationals with Bland's anti-cycling rule:
// minimise the sum of artificial variables from the all-artificial basis;
// the system is feasible iff the optimum is zero.  Everything is exact, so
// feasibility answers are certificates, not approximations.

#include <vector>

#include "cubelab/rational.hpp"

namespace cubelab {

struct FeasibilityResult {
  bool feasible = false;
  // A feasible point (size = number of columns of A) when feasible.
  std::vector<Rational> point;
};

// A is row-major m x n (m = b.size(), n = columns).  Rows with negative
// right-hand side are negated internally, so any sign of b is accepted.
FeasibilityResult solve_equality_feasibility(
    std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs);

}  // namespace cubelab
