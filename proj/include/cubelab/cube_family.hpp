#pragma once
// Families of k-uniform subcubes of Q^d and the box graph over them.
//
// A direction set D is an unordered family of m pairwise-disjoint coordinate
// blocks, each of size k.  For a vertex v, the subcube
//     Q(D, v) = { v ^ xor(blocks in I) : I subseteq D }
// has 2^m vertices; any member generates the same cube, so handles are
// canonicalised to the minimum vertex (per block, keep the smaller of the
// two residues — blocks are disjoint, so the minimum factorises).  For fixed
// D the cubes over all v partition V(Q^d) into 2^(d-m) classes.
//
// Two handles with the same (d, k, m) are box-adjacent when their vertex
// sets share exactly 2^(m-1) vertices; sharing a representative and all but
// one block is the canonical way this happens.  construct_gbox_path builds
// an explicit box-graph walk between any two handles, in three phases:
//   (a) move the representative to the target vertex through distance-k
//       steps — strides over the k lowest differing coordinates while the
//       distance is at least k, then each leftover coordinate i is simulated
//       by three k-flips e, f, g whose symmetric difference is {i};
//   (b) each k-flip e is enabled by direction swaps: clear the blocks
//       meeting e (one swap each, replacing them with fresh lex-lowest
//       blocks), swap e itself in, and then the representative move inside
//       the new cube is free — the handle does not change;
//   (c) finally rotate the direction set to the target's through a fresh
//       intermediate family (2m swaps, collision-free by construction).
// Each swap changes one block and keeps the representative, so consecutive
// handles are box-adjacent; the walk length is bounded by 4kd under the
// precondition d >= 2 k^2 (m+1) with k odd, k >= 3 (see the length audit in
// construct_gbox_path).

#include <cstdint>
#include <string>
#include <vector>

#include "cubelab/bits.hpp"
#include "cubelab/rational.hpp"
#include "cubelab/skeleton.hpp"

namespace cubelab {

struct DirectionSet {
  int d = 0;
  std::vector<VertexId> blocks;  // sorted ascending, disjoint, equal popcount

  int m() const { return static_cast<int>(blocks.size()); }
  int k() const {
    return blocks.empty() ? 0 : std::popcount(blocks.front());
  }
  VertexId union_mask() const {
    VertexId u = 0;
    for (VertexId b : blocks) u |= b;
    return u;
  }
  friend bool operator==(const DirectionSet&, const DirectionSet&) = default;
};

// Validates disjointness, uniform popcount, range; sorts the blocks.
DirectionSet make_direction_set(int d, std::vector<VertexId> blocks);

struct SubcubeHandle {
  DirectionSet directions;
  VertexId anchor = 0;  // canonical: minimum vertex of the cube

  friend bool operator==(const SubcubeHandle&, const SubcubeHandle&) = default;
};

// Canonicalises (D, v): per block, keep the smaller residue.
SubcubeHandle make_handle(DirectionSet directions, VertexId v);

// The 2^m vertices of the handle's cube, ascending.  m <= 20.
std::vector<VertexId> subcube_vertices(const SubcubeHandle& h);

// Executable anchor independence: every member of Q(D, v) canonicalises to
// the same handle.
bool anchor_invariance_check(const DirectionSet& directions, VertexId v);

// For fixed D: the canonical handles over all 2^d vertices number exactly
// 2^(d-m), are pairwise disjoint, and cover V(Q^d).  d <= 20.
bool partition_check(const DirectionSet& directions);

// |D_{k,m}| = d! / ((k!)^m m! (d-km)!) and the family size 2^(d-m) |D_{k,m}|,
// exactly.  For m >= 1 the result is checked against the e^(2 d ln d) bound
// (the degenerate m = 0 family of singletons is exempt: at d = 1 it has 2
// members while the bound allows only e^0 = 1).
BigInt direction_set_count(int d, int k, int m);
BigInt family_size(int d, int k, int m);

// |V(h1) cap V(h2)| == 2^(m-1), by enumeration.  Same (d, k, m) required.
bool gbox_adjacent(const SubcubeHandle& h1, const SubcubeHandle& h2);

struct CubePath {
  std::vector<SubcubeHandle> handles;  // consecutive entries box-adjacent

  std::size_t length() const {
    return handles.empty() ? 0 : handles.size() - 1;
  }
  // One line per handle: sorted hex block masks, then "@", then hex anchor.
  std::string dump() const;
};

// Box-graph walk from h_from to h_to; validates every consecutive pair and
// the <= 4kd length bound before returning.  Preconditions: same (d, k, m),
// m >= 1, k odd and >= 3, d >= 2 k^2 (m+1).
CubePath construct_gbox_path(const SubcubeHandle& h_from,
                             const SubcubeHandle& h_to);

// Deterministic pseudo-random handles for probes and demos.
DirectionSet random_direction_set(int d, int k, int m, std::uint64_t key,
                                  std::uint64_t index);
SubcubeHandle random_handle(int d, int k, int m, std::uint64_t key,
                            std::uint64_t index);

struct CouplingReport {
  int d = 0, k = 0, m = 0;
  Rational p, q;
  std::uint64_t trials = 0;
  bool self_test = false;
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool pass = true;
  int cells_input = 0;
  int cells_used = 0;
  // Edge behaviour conditioned on all cube vertices being retained:
  std::uint64_t conditional_trials = 0;        // trials with full vertex set
  std::vector<double> conditional_edge_freq;   // per cube edge
  std::vector<double> pairwise_edge_corr;      // per unordered edge pair
};

// Fixes the handle with blocks {bits 0..k-1}, ..., anchor 0, draws `trials`
// independent percolation samples (per-trial lazy oracles), records the
// configuration (retained cube vertices, skeleton-adjacent cube edges among
// retained pairs), and chi-square-tests the empirical law against the
// product law: vertices iid Bern(p), edges iid Bern(q(p, k)) given their
// endpoints.  With self_test, configurations are drawn from the product law
// itself (calibration of the test).  Pass iff p_value >= significance.
// Guards: km <= d <= 12, k <= 4, 1 <= m <= 3.
CouplingReport coupling_distribution_test(int d, int k, int m,
                                          const Rational& p,
                                          std::uint64_t trials,
                                          double significance,
                                          std::uint64_t seed,
                                          bool self_test = false);

struct ConditionsProbeReport {
  Rational density_deviation;  // | |V| / 2^d - p |
  std::uint64_t handles_checked = 0;
  std::uint64_t handle_violations = 0;  // outside (1 +- eps) p 2^m
  std::uint64_t pairs_checked = 0;
  std::uint64_t pair_violations = 0;  // outside (1/2 +- eps) p 2^m
};

// Density diagnostics for a skeleton's vertex sample: global density
// deviation, plus occupancy windows over random handles and box-adjacent
// pairs (shared halves should hold about half the cube's share).  Windows
// are compared exactly; the bounds are asymptotic, so this only reports.
// Guards: skeleton built with k_max >= k; km <= d <= 12.
ConditionsProbeReport conditions_i_iii_probe(const SkeletonGraph& skeleton,
                                             int k, int m,
                                             const Rational& epsilon,
                                             std::uint64_t max_handles = 1000);

}  // namespace cubelab
