#pragma once
// Exact 1-skeletons of percolated-cube polytopes.
//
// Given a materialised vertex sample V of Q^d, the skeleton is the graph on
// V whose edges are the 1-faces of conv(V).  Adjacency of a pair at Hamming
// distance k is decided inside its spanned k-subcube (see adjacency.hpp), so
// the builder walks all pairs, buckets them by distance, and runs the exact
// segment LP per pair.  Edges are stored grouped by distance class k with
// (k, u, v) ascending and u < v — the canonical order every serialisation
// and parallel schedule must reproduce.

#include <cstdint>
#include <vector>

#include "cubelab/graph.hpp"
#include "cubelab/rational.hpp"
#include "cubelab/sampling.hpp"

namespace cubelab {

struct SkeletonEdge {
  int k = 0;  // hamming distance class
  VertexId u = 0;
  VertexId v = 0;  // u < v

  friend bool operator==(const SkeletonEdge&, const SkeletonEdge&) = default;
  friend auto operator<=>(const SkeletonEdge& a, const SkeletonEdge& b) {
    if (a.k != b.k) return a.k <=> b.k;
    if (a.u != b.u) return a.u <=> b.u;
    return a.v <=> b.v;
  }
};

struct SkeletonGraph {
  int d = 0;
  Rational p;
  std::uint64_t seed = 0;
  int k_max = 0;
  std::vector<VertexId> vertices;   // ascending
  std::vector<SkeletonEdge> edges;  // ascending by (k, u, v)

  std::uint64_t edge_count_in_class(int k) const;
  bool has_edge(VertexId u, VertexId v) const;

  // Index graph over positions in `vertices` (labels[i] = vertices[i]).
  LabeledGraph to_labeled_graph() const;
};

struct SkeletonBuildOptions {
  int k_max = -1;       // -1: use d (all distance classes)
  int threads = 1;      // deterministic for any value
  std::uint64_t max_pairs = 50'000'000;  // guard on n(n-1)/2
  double budget_seconds = 0.0;           // 0: no wall-clock budget
};

// d <= 14.  Throws GuardError when the pair budget is exceeded up front and
// BudgetError when the wall clock runs out mid-build.
SkeletonGraph build_skeleton(const PercolationSample& sample,
                             const SkeletonBuildOptions& options = {});

// Interior configuration counts for a distance-k pair: counts[j] = number of
// j-subsets of the 2^k - 2 interior vertices of the spanned subcube whose
// retention leaves the endpoints adjacent.  k <= 4; results are cached.
const std::vector<std::uint64_t>& edge_config_counts(int k);

// Exact probability that two retained vertices at Hamming distance k are
// skeleton-adjacent:  q(p, k) = sum_j counts[j] p^j (1-p)^(2^k - 2 - j).
Rational exact_edge_probability_q(const Rational& p, int k);

}  // namespace cubelab
