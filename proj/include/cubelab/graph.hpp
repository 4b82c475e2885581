#pragma once
// A small undirected simple graph on vertices 0..n-1, tuned for exhaustive
// combinatorial work rather than scale: sorted adjacency lists, set-indexed
// boundary counts, 64-bit adjacency masks for subset enumeration, and a
// dense Laplacian for spectral routines.

#include <cstdint>
#include <vector>

#include "cubelab/errors.hpp"

namespace cubelab {

class Graph {
 public:
  explicit Graph(int n);

  int size() const { return n_; }
  std::uint64_t edge_count() const { return edge_count_; }

  // Ignores duplicates; rejects self-loops and out-of-range endpoints.
  void add_edge(int a, int b);

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool has_edge(int a, int b) const;

  // Number of edges with exactly one endpoint in S (S given as indicator).
  std::uint64_t edge_boundary(const std::vector<char>& in_set) const;

  // Outside-neighborhood size |N(S) \ S| for S given as indicator.
  std::uint64_t outside_neighborhood(const std::vector<char>& in_set) const;

  // Connected components as vertex lists, each sorted ascending, ordered by
  // smallest member.
  std::vector<std::vector<int>> components() const;

  // Adjacency bitmasks; requires n <= 64.
  std::vector<std::uint64_t> adjacency_masks() const;

  // Dense combinatorial Laplacian L = D - A, row-major n x n.
  std::vector<double> laplacian() const;

 private:
  int n_;
  std::uint64_t edge_count_ = 0;
  std::vector<std::vector<int>> adj_;
};

}  // namespace cubelab
