#pragma once
// The d-dimensional hypercube graph Q^d and its isoperimetric facts.
//
// Two classical inequalities are exercised here:
//   * edge form: every S with |S| = s satisfies e(S, S^c) >= s (d - log2 s);
//   * vertex form: for eps in (0,1), every S with |S| <= (1-eps) 2^d
//     satisfies |N(S) \ S| >= eps |S| / (10 sqrt(d)).
// exhaustive_isoperimetry_check verifies both over every nonempty subset of
// Q^d for small d, reporting the first counterexample if one exists.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cubelab/bits.hpp"
#include "cubelab/graph.hpp"
#include "cubelab/vertex_set.hpp"

namespace cubelab {

// Q^d as a Graph on vertex ids 0..2^d-1.  Materialises 2^d vertices, so d is
// capped at 16.
Graph hypercube_graph(int d);

// Lower bound s (d - log2 s) on the edge boundary of any s-subset of Q^d.
double harper_edge_bound(int d, std::uint64_t s);

// Edge boundary e(S, S^c) of a vertex subset inside Q^d (not an induced
// subgraph: all cube edges count).
std::uint64_t cube_edge_boundary(int d, const VertexSet& s);

// |N(S) \ S| inside Q^d.
std::uint64_t cube_outside_neighborhood(int d, const VertexSet& s);

struct IsoperimetryReport {
  bool pass = true;
  std::uint64_t subsets_checked = 0;
  // First counterexample, if any.
  std::uint32_t bad_set = 0;        // vertex bitmask over Q^d
  std::string violated;             // "edge" or "vertex(eps=...)"
  double observed = 0.0;            // quantity that fell short
  double required = 0.0;            // bound it had to meet
};

// Checks every nonempty S of Q^d against the edge bound and, for each given
// eps, against the vertex bound (only when |S| <= (1-eps) 2^d).  Stops at the
// first violation.  Requires d <= 4 (65535 subsets at d = 4).
IsoperimetryReport exhaustive_isoperimetry_check(
    int d, const std::vector<double>& epsilons = {0.25, 0.5});

}  // namespace cubelab
