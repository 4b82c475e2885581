#pragma once
// Random submodels of the hypercube.
//
// Vertex percolation: each vertex of Q^d is retained independently with
// probability p.  Mixed percolation additionally retains each cube edge
// independently with probability q; its induced graph keeps an edge iff both
// endpoints and the edge itself survived.
//
// All coins are counter-based (see rng.hpp): retention of vertex v is a pure
// function of (seed, v), and of edge (u, u + 2^i) a pure function of
// (seed, i, u).  Hence lazy point queries at any d <= 63 agree bit-for-bit
// with materialised sets, and coupling across p is monotone: raising p only
// raises the threshold the same words are compared against, so the retained
// set grows pointwise.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cubelab/bits.hpp"
#include "cubelab/graph.hpp"
#include "cubelab/rational.hpp"
#include "cubelab/rng.hpp"
#include "cubelab/vertex_set.hpp"

namespace cubelab {

// Lazy retention oracle; valid for any dimension up to kMaxDimension.
class VertexPercolation {
 public:
  VertexPercolation(int d, Rational p, std::uint64_t seed);

  bool retained(VertexId v) const {
    check_vertex(d_, v);
    return threshold_.retains(counter_word(key_, v));
  }

  int dimension() const { return d_; }
  const Rational& p() const { return p_; }
  std::uint64_t seed() const { return seed_; }

 private:
  int d_;
  Rational p_;
  std::uint64_t seed_;
  RetentionThreshold threshold_;
  std::uint64_t key_;
};

// Materialised vertex-percolation sample (d <= kMaxMaterialisedDimension).
struct PercolationSample {
  int d = 0;
  Rational p;
  std::uint64_t seed = 0;
  VertexSet vertices;

  PercolationSample(int d_, Rational p_, std::uint64_t seed_)
      : d(d_), p(std::move(p_)), seed(seed_), vertices(d_) {}
};

PercolationSample sample_vertex_percolation(int d, const Rational& p,
                                            std::uint64_t seed);

// Canonical index of cube edge {u, u + 2^i} (bit i of u clear): direction-
// major, with the 2^(d-1) edges of a direction indexed by squeezing bit i
// out of the lower endpoint.
inline std::uint64_t cube_edge_index(int d, VertexId lower_endpoint, int i) {
  return (static_cast<std::uint64_t>(i) << (d - 1)) |
         squeeze_bit(lower_endpoint, i);
}

// Lazy edge-retention oracle for the mixed model's independent edge coins.
class EdgePercolation {
 public:
  EdgePercolation(int d, Rational q, std::uint64_t seed);

  // u, v must be cube-adjacent.
  bool retained(VertexId u, VertexId v) const;

  int dimension() const { return d_; }
  const Rational& q() const { return q_; }

 private:
  int d_;
  Rational q_;
  RetentionThreshold threshold_;
  std::uint64_t key_;
};

struct MixedSample {
  int d = 0;
  Rational p;
  Rational q;
  std::uint64_t seed = 0;
  VertexSet vertices;
  // Induced edges: both endpoints retained and the edge coin succeeded.
  // Sorted ascending as (u, v) pairs with u < v.
  std::vector<std::pair<VertexId, VertexId>> edges;

  MixedSample(int d_, Rational p_, Rational q_, std::uint64_t seed_)
      : d(d_), p(std::move(p_)), q(std::move(q_)), seed(seed_), vertices(d_) {}
};

// d <= 16: the mixed model materialises all surviving edges.
MixedSample sample_mixed(int d, const Rational& p, const Rational& q,
                         std::uint64_t seed);

// The induced graph of a mixed sample, with labels[i] = cube id of graph
// vertex i (labels ascending).
struct LabeledGraph {
  Graph graph;
  std::vector<VertexId> labels;
};
LabeledGraph induced_graph(const MixedSample& sample);

// The induced subgraph of the skeleton-free vertex model inside Q^d: all
// cube edges between retained vertices.
LabeledGraph induced_cube_graph(const PercolationSample& sample);

// Coordinate projection dropping the b highest coordinates.
inline VertexId project_vertex(int d, int b, VertexId v) {
  check_vertex(d, v);
  if (b < 0 || b >= d) throw GuardError("projection needs 0 <= b < d");
  return v & low_bits(d - b);
}

struct ProjectionResult {
  PercolationSample projected;  // p field holds the effective density rho
  Rational rho;                 // 1 - (1 - p)^(2^b), exact
  int b = 0;
};

// Image of the retained set under project_vertex.  The image is itself a
// vertex percolation on Q^(d-b) with parameter rho (fibers are disjoint and
// coins independent), but it is not counter-generated at rho: the vertices
// field carries the actual image.
ProjectionResult project(const PercolationSample& sample, int b);

// fiber occupancy histogram: for each k, how many of the 2^(d-b) projection
// fibers contain exactly k retained vertices.  Buckets with zero fibers are
// omitted (so the k = 0 bucket appears iff some fiber is empty).
std::map<std::uint32_t, std::uint64_t> fiber_census(
    const PercolationSample& sample, int b);

// Independent thinning: keep each retained vertex with probability r using a
// separate coin family.  The result is distributed as vertex percolation
// with parameter p * r (recorded in its p field) but is coupled to the input
// sample, not to a fresh percolation at p * r.
PercolationSample thin(const PercolationSample& sample, const Rational& r);

}  // namespace cubelab
