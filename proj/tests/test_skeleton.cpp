// The exact 1-skeleton builder: canonical edge order, determinism across
// thread counts, truncation by distance class, and resource guards.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cubelab/adjacency.hpp"
#include "cubelab/bits.hpp"
#include "cubelab/errors.hpp"
#include "cubelab/rational.hpp"
#include "cubelab/sampling.hpp"
#include "cubelab/skeleton.hpp"

using namespace cubelab;

namespace {

// Reference construction: decide every pair directly, in the documented
// (k, u, v) ascending order, without the builder's scheduling machinery.
std::vector<SkeletonEdge> brute_force_edges(const PercolationSample& sample,
                                            int k_max) {
  const std::vector<VertexId> verts = sample.vertices.to_vector();
  std::vector<SkeletonEdge> out;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      const int k = hamming_distance(verts[i], verts[j]);
      if (k > k_max) continue;
      if (local_adjacency(sample, verts[i], verts[j])) {
        out.push_back(SkeletonEdge{k, verts[i], verts[j]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("full cube skeletons are exactly the cube graphs") {
  for (int d : {2, 3, 4}) {
    const PercolationSample s = sample_vertex_percolation(d, Rational(1), 0);
    const SkeletonGraph sk = build_skeleton(s);
    CHECK(sk.d == d);
    CHECK(sk.k_max == d);
    // All vertices present, ascending by id.
    REQUIRE(sk.vertices.size() == (VertexId{1} << d));
    for (VertexId v = 0; v < sk.vertices.size(); ++v) {
      CHECK(sk.vertices[v] == v);
    }
    // Every edge is a distance-1 pair and all of them appear.
    CHECK(sk.edges.size() ==
          static_cast<std::uint64_t>(d) << (d - 1));
    for (const auto& e : sk.edges) CHECK(e.k == 1);
    CHECK(sk.edge_count_in_class(1) == sk.edges.size());
    for (int k = 2; k <= d; ++k) CHECK(sk.edge_count_in_class(k) == 0);
    for (VertexId u = 0; u < sk.vertices.size(); ++u) {
      for (VertexId v = u + 1; v < sk.vertices.size(); ++v) {
        CHECK(sk.has_edge(u, v) == (hamming_distance(u, v) == 1));
        CHECK(sk.has_edge(v, u) == sk.has_edge(u, v));
      }
    }
    const LabeledGraph lg = sk.to_labeled_graph();
    CHECK(lg.labels == sk.vertices);
    CHECK(lg.graph.edge_count() == sk.edges.size());
    for (int v = 0; v < static_cast<int>(sk.vertices.size()); ++v) {
      CHECK(lg.graph.degree(v) == d);
    }
  }
}

TEST_CASE("builder output matches the pairwise reference decision") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const PercolationSample s =
        sample_vertex_percolation(5, Rational(1, 2), seed);
    const SkeletonGraph sk = build_skeleton(s);
    CHECK(sk.edges == brute_force_edges(s, 5));
  }
}

TEST_CASE("skeletons are deterministic and independent of thread count") {
  const PercolationSample s = sample_vertex_percolation(6, Rational(1, 2), 9);
  const SkeletonGraph serial = build_skeleton(s);
  const SkeletonGraph again = build_skeleton(s);
  CHECK(serial.edges == again.edges);
  CHECK(serial.vertices == again.vertices);
  for (int threads : {2, 3, 7}) {
    SkeletonBuildOptions opt;
    opt.threads = threads;
    const SkeletonGraph parallel = build_skeleton(s, opt);
    CHECK(parallel.edges == serial.edges);
    CHECK(parallel.vertices == serial.vertices);
  }
  // More threads than pairs is fine.
  PercolationSample tiny(3, Rational(0), 0);
  tiny.vertices.insert(0b000);
  tiny.vertices.insert(0b011);
  SkeletonBuildOptions opt;
  opt.threads = 16;
  const SkeletonGraph small = build_skeleton(tiny, opt);
  REQUIRE(small.edges.size() == 1);
  CHECK(small.edges[0] == SkeletonEdge{2, 0b000, 0b011});
}

TEST_CASE("edge lists satisfy the canonical-order invariants") {
  const PercolationSample s = sample_vertex_percolation(6, Rational(3, 5), 4);
  const SkeletonGraph sk = build_skeleton(s);
  CHECK(std::is_sorted(sk.edges.begin(), sk.edges.end()));
  CHECK(std::adjacent_find(sk.edges.begin(), sk.edges.end()) ==
        sk.edges.end());
  std::uint64_t per_class_total = 0;
  for (int k = 1; k <= sk.k_max; ++k) {
    per_class_total += sk.edge_count_in_class(k);
  }
  CHECK(per_class_total == sk.edges.size());
  for (const auto& e : sk.edges) {
    CHECK(e.u < e.v);
    CHECK(hamming_distance(e.u, e.v) == e.k);
    CHECK(e.k >= 1);
    CHECK(e.k <= sk.k_max);
    CHECK(s.vertices.contains(e.u));
    CHECK(s.vertices.contains(e.v));
    CHECK(sk.has_edge(e.u, e.v));
  }
  // A pair of retained vertices that is not listed is indeed not adjacent.
  const std::vector<VertexId> verts = sk.vertices;
  int checked_absent = 0;
  for (std::size_t i = 0; i < verts.size() && checked_absent < 25; ++i) {
    for (std::size_t j = i + 1; j < verts.size() && checked_absent < 25;
         ++j) {
      if (sk.has_edge(verts[i], verts[j])) continue;
      CHECK_FALSE(local_adjacency(s, verts[i], verts[j]));
      ++checked_absent;
    }
  }
  CHECK(checked_absent == 25);
}

TEST_CASE("k_max truncates exactly to the low distance classes") {
  const PercolationSample s = sample_vertex_percolation(5, Rational(1, 2), 8);
  const SkeletonGraph full = build_skeleton(s);

  SkeletonBuildOptions opt;
  opt.k_max = 2;
  const SkeletonGraph trunc = build_skeleton(s, opt);
  std::vector<SkeletonEdge> expected;
  for (const auto& e : full.edges) {
    if (e.k <= 2) expected.push_back(e);
  }
  CHECK(trunc.edges == expected);
  CHECK(trunc.k_max == 2);
  CHECK(trunc.vertices == full.vertices);

  // Class 1 alone is the induced cube graph: cube edges are always kept.
  opt.k_max = 1;
  const SkeletonGraph class1 = build_skeleton(s, opt);
  CHECK(class1.edges.size() == induced_cube_graph(s).graph.edge_count());
  for (const auto& e : class1.edges) CHECK(e.k == 1);
}

TEST_CASE("degenerate samples build empty or singleton skeletons") {
  const PercolationSample none = sample_vertex_percolation(4, Rational(0), 0);
  const SkeletonGraph empty = build_skeleton(none);
  CHECK(empty.vertices.empty());
  CHECK(empty.edges.empty());

  PercolationSample one(4, Rational(0), 0);
  one.vertices.insert(0b0101);
  const SkeletonGraph single = build_skeleton(one);
  CHECK(single.vertices == std::vector<VertexId>{0b0101});
  CHECK(single.edges.empty());

  // Two antipodal survivors span an otherwise-empty cube: one long edge.
  PercolationSample pair(4, Rational(0), 0);
  pair.vertices.insert(0b0000);
  pair.vertices.insert(0b1111);
  const SkeletonGraph diag = build_skeleton(pair);
  REQUIRE(diag.edges.size() == 1);
  CHECK(diag.edges[0] == SkeletonEdge{4, 0b0000, 0b1111});
}

TEST_CASE("resource guards: dimension, k_max, pair budget, wall clock") {
  const PercolationSample big = sample_vertex_percolation(15, Rational(0), 0);
  CHECK_THROWS_AS(build_skeleton(big), GuardError);

  const PercolationSample s = sample_vertex_percolation(4, Rational(1, 2), 1);
  SkeletonBuildOptions opt;
  opt.k_max = 0;
  CHECK_THROWS_AS(build_skeleton(s, opt), GuardError);
  opt.k_max = 5;
  CHECK_THROWS_AS(build_skeleton(s, opt), GuardError);

  // Pair budget is checked up front.
  const PercolationSample full = sample_vertex_percolation(8, Rational(1), 0);
  SkeletonBuildOptions tight;
  tight.max_pairs = 1000;  // 256 vertices -> 32640 pairs
  CHECK_THROWS_AS(build_skeleton(full, tight), GuardError);

  // An immediately-expired wall clock aborts the scan mid-build.
  const PercolationSample wide =
      sample_vertex_percolation(9, Rational(1, 2), 2);
  SkeletonBuildOptions expired;
  expired.k_max = 2;
  expired.budget_seconds = 1e-9;
  CHECK_THROWS_AS(build_skeleton(wide, expired), BudgetError);

  // A generous budget changes nothing.
  SkeletonBuildOptions generous;
  generous.budget_seconds = 300.0;
  const SkeletonGraph a = build_skeleton(s, generous);
  const SkeletonGraph b = build_skeleton(s);
  CHECK(a.edges == b.edges);
}
