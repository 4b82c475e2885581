// Bit-level cube machinery, the cube graph, and the exhaustive
// edge/vertex expansion bounds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "cubelab/bits.hpp"
#include "cubelab/errors.hpp"
#include "cubelab/graph.hpp"
#include "cubelab/hypercube.hpp"
#include "cubelab/vertex_set.hpp"

using namespace cubelab;

TEST_CASE("hamming distance and low_bits basics") {
  CHECK(hamming_distance(0b000, 0b111) == 3);
  CHECK(hamming_distance(0b101, 0b101) == 0);
  CHECK(hamming_distance(0b1100, 0b0110) == 2);
  CHECK(low_bits(0) == 0);
  CHECK(low_bits(3) == 0b111);
  CHECK(low_bits(63) == 0x7fffffffffffffffULL);
}

TEST_CASE("dimension and vertex guards") {
  CHECK_THROWS_AS(check_dimension(0), GuardError);
  CHECK_THROWS_AS(check_dimension(64), GuardError);
  CHECK_NOTHROW(check_dimension(63));
  CHECK_THROWS_AS(check_vertex(3, 8), GuardError);
  CHECK_NOTHROW(check_vertex(3, 7));
}

TEST_CASE("subcube between two vertices") {
  const SubcubeSpan span = subcube_between(3, 0b010, 0b111);
  CHECK(span.base == 0b010);
  CHECK(span.free_mask == 0b101);
  CHECK(span.dimension() == 2);
  CHECK(span.contains(0b010));
  CHECK(span.contains(0b111));
  CHECK(span.contains(0b011));
  CHECK(span.contains(0b110));
  CHECK_FALSE(span.contains(0b000));
  CHECK_FALSE(span.contains(0b100));
}

TEST_CASE("span enumeration is ascending and complete") {
  // Frozen order for base 010, free 101.
  const SubcubeSpan span = subcube_between(3, 0b010, 0b111);
  const std::vector<VertexId> seen = enumerate_span(span);
  CHECK(seen == std::vector<VertexId>{0b010, 0b011, 0b110, 0b111});

  // Property: any span enumerates 2^dim distinct ascending members.
  const SubcubeSpan wide = subcube_between(5, 0b00000, 0b11111);
  const std::vector<VertexId> all = enumerate_span(wide);
  CHECK(all.size() == 32);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("gosper iteration walks same-popcount masks in order") {
  // Frozen: the 2-subsets of 4 bits in ascending mask order.
  std::vector<std::uint64_t> got;
  std::uint64_t m = 0b0011;
  while (m < (1u << 4)) {
    got.push_back(m);
    m = next_same_popcount(m);
  }
  CHECK(got == std::vector<std::uint64_t>{0b0011, 0b0101, 0b0110, 0b1001,
                                          0b1010, 0b1100});
}

TEST_CASE("distance-k neighbors ascend by flip mask") {
  const std::vector<VertexId> n = distance_k_neighbors(3, 0b000, 2);
  CHECK(n == std::vector<VertexId>{0b011, 0b101, 0b110});
  const std::vector<VertexId> n1 = distance_k_neighbors(3, 0b101, 1);
  CHECK(n1 == std::vector<VertexId>{0b100, 0b111, 0b001});  // flips 1,2,4
}

TEST_CASE("compress and expand bits invert each other") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t mask = rng() & low_bits(20);
    const int bits = std::popcount(mask);
    const std::uint64_t packed = rng() & low_bits(bits);
    CHECK(compress_bits(expand_bits(packed, mask), mask) == packed);
    const std::uint64_t value = rng() & mask;
    CHECK(expand_bits(compress_bits(value, mask), mask) == value);
  }
  CHECK(compress_bits(0b1010, 0b1110) == 0b101);
  CHECK(expand_bits(0b101, 0b1110) == 0b1010);
}

TEST_CASE("squeeze_bit removes one coordinate") {
  CHECK(squeeze_bit(0b1011, 0) == 0b101);
  CHECK(squeeze_bit(0b1011, 1) == 0b101);
  CHECK(squeeze_bit(0b1011, 2) == 0b111);
  CHECK(squeeze_bit(0b1011, 3) == 0b011);
}

TEST_CASE("hypercube graph shape") {
  for (int d = 1; d <= 5; ++d) {
    const Graph g = hypercube_graph(d);
    CHECK(g.size() == (1 << d));
    CHECK(g.edge_count() ==
          static_cast<std::uint64_t>(d) << (d - 1));  // d 2^(d-1)
    for (int v = 0; v < g.size(); ++v) CHECK(g.degree(v) == d);
    CHECK(g.components().size() == 1);
  }
  CHECK_THROWS_AS(hypercube_graph(17), GuardError);
}

TEST_CASE("graph primitives") {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 0);  // duplicate ignored
  g.add_edge(3, 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK_THROWS_AS(g.add_edge(2, 2), GuardError);
  CHECK_THROWS_AS(g.add_edge(0, 5), GuardError);

  const auto comps = g.components();
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<int>{0, 1});
  CHECK(comps[1] == std::vector<int>{2});
  CHECK(comps[2] == std::vector<int>{3, 4});

  const std::vector<char> in_set = {1, 0, 0, 1, 1};
  CHECK(g.edge_boundary(in_set) == 1);        // only 0-1 crosses
  CHECK(g.outside_neighborhood(in_set) == 1);  // vertex 1

  const auto masks = g.adjacency_masks();
  CHECK(masks[0] == 0b00010);
  CHECK(masks[4] == 0b01000);

  const auto lap = g.laplacian();
  for (int i = 0; i < 5; ++i) {
    double row = 0;
    for (int j = 0; j < 5; ++j) row += lap[static_cast<std::size_t>(i) * 5 + j];
    CHECK(row == doctest::Approx(0.0));
  }
  CHECK(lap[0] == doctest::Approx(1.0));
  CHECK(lap[1] == doctest::Approx(-1.0));
}

TEST_CASE("edge bound matches the exhaustive minimum at d = 3") {
  // Oracle: direct minimum of e(S, S^c) over all s-subsets of Q^3.
  const Graph q3 = hypercube_graph(3);
  std::vector<std::uint64_t> min_boundary(9, ~std::uint64_t{0});
  for (std::uint32_t mask = 1; mask < 256; ++mask) {
    std::vector<char> in(8, 0);
    for (int v = 0; v < 8; ++v) in[v] = (mask >> v) & 1;
    const int s = std::popcount(mask);
    min_boundary[s] = std::min(min_boundary[s], q3.edge_boundary(in));
  }
  // s (3 - log2 s) is tight at powers of two and a valid bound elsewhere.
  CHECK(min_boundary[1] == 3);
  CHECK(min_boundary[2] == 4);
  CHECK(min_boundary[4] == 4);
  CHECK(min_boundary[8] == 0);
  for (std::uint64_t s = 1; s <= 8; ++s) {
    CHECK(static_cast<double>(min_boundary[s]) >=
          harper_edge_bound(3, s) - 1e-9);
  }
  CHECK(harper_edge_bound(3, 2) == doctest::Approx(4.0));
  CHECK(harper_edge_bound(3, 8) == doctest::Approx(0.0));
  CHECK_THROWS_AS(harper_edge_bound(3, 0), GuardError);
  CHECK_THROWS_AS(harper_edge_bound(3, 9), GuardError);
}

TEST_CASE("set-indexed boundary and neighborhood agree with the graph") {
  const int d = 4;
  const Graph g = hypercube_graph(d);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t mask = static_cast<std::uint32_t>(rng()) & 0xffff;
    VertexSet s(d);
    std::vector<char> in(16, 0);
    for (int v = 0; v < 16; ++v) {
      if ((mask >> v) & 1) {
        s.insert(static_cast<VertexId>(v));
        in[v] = 1;
      }
    }
    CHECK(cube_edge_boundary(d, s) == g.edge_boundary(in));
    CHECK(cube_outside_neighborhood(d, s) == g.outside_neighborhood(in));
  }
}

TEST_CASE("exhaustive expansion bounds hold for d = 2, 3, 4") {
  for (int d = 2; d <= 4; ++d) {
    const IsoperimetryReport rep = exhaustive_isoperimetry_check(d);
    CHECK(rep.pass);
    CHECK(rep.subsets_checked ==
          (std::uint64_t{1} << (std::uint64_t{1} << d)) - 1);
  }
  CHECK_THROWS_AS(exhaustive_isoperimetry_check(5), GuardError);
}

TEST_CASE("vertex set invariants") {
  VertexSet s(4);
  CHECK(s.empty());
  s.insert(3);
  s.insert(9);
  s.insert(3);
  CHECK(s.count() == 2);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
  CHECK(s.to_vector() == std::vector<VertexId>{3, 9});
  s.erase(3);
  CHECK(s.to_vector() == std::vector<VertexId>{9});
  CHECK_THROWS_AS(s.insert(16), GuardError);
  CHECK_THROWS_AS(VertexSet(31), GuardError);  // materialisation cap
}
