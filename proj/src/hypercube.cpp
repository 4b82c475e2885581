#include "cubelab/hypercube.hpp"

#include <bit>

#include "cubelab/errors.hpp"

namespace cubelab {

Graph hypercube_graph(int d) {
  check_dimension(d);
  if (d > 16) {
    throw GuardError("hypercube graphs materialise only up to dimension 16");
  }
  const VertexId n = VertexId{1} << d;
  Graph g(static_cast<int>(n));
  for (VertexId v = 0; v < n; ++v) {
    for (int i = 0; i < d; ++i) {
      const VertexId w = v | (VertexId{1} << i);
      if (w != v) g.add_edge(static_cast<int>(v), static_cast<int>(w));
    }
  }
  return g;
}

double harper_edge_bound(int d, std::uint64_t s) {
  check_dimension(d);
  if (s < 1 || s > (VertexId{1} << d)) {
    throw GuardError("subset size out of range for this dimension");
  }
  return static_cast<double>(s) * (d - std::log2(static_cast<double>(s)));
}

std::uint64_t cube_edge_boundary(int d, const VertexSet& s) {
  if (s.dimension() != d) throw GuardError("vertex set dimension mismatch");
  std::uint64_t cut = 0;
  s.for_each([&](VertexId v) {
    for (int i = 0; i < d; ++i) {
      if (!s.contains(v ^ (VertexId{1} << i))) ++cut;
    }
  });
  return cut;
}

std::uint64_t cube_outside_neighborhood(int d, const VertexSet& s) {
  if (s.dimension() != d) throw GuardError("vertex set dimension mismatch");
  VertexSet seen(d);
  std::uint64_t size = 0;
  s.for_each([&](VertexId v) {
    for (int i = 0; i < d; ++i) {
      const VertexId w = v ^ (VertexId{1} << i);
      if (!s.contains(w) && !seen.contains(w)) {
        seen.insert(w);
        ++size;
      }
    }
  });
  return size;
}

IsoperimetryReport exhaustive_isoperimetry_check(
    int d, const std::vector<double>& epsilons) {
  check_dimension(d);
  if (d > 4) {
    throw GuardError(
        "exhaustive isoperimetry enumerates 2^(2^d) subsets; d <= 4 only");
  }
  const int n = 1 << d;
  // Per-vertex adjacency bitmasks over the <= 16 cube vertices.
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < d; ++i) adj[v] |= std::uint32_t{1} << (v ^ (1 << i));
  }
  // Comparisons at integer-vs-real boundaries carry a pinned slack so an
  // exact tie (e.g. s a power of two) never trips on rounding.
  constexpr double kTie = 1e-9;

  IsoperimetryReport report;
  const std::uint32_t all = (n == 32) ? 0xffffffffu
                                      : ((std::uint32_t{1} << n) - 1);
  for (std::uint32_t set = 1; set <= all; ++set) {
    ++report.subsets_checked;
    const int s = std::popcount(set);
    std::uint64_t cut = 0;
    std::uint32_t nbr = 0;
    for (std::uint32_t rest = set; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      cut += std::popcount(adj[v] & ~set & all);
      nbr |= adj[v];
    }
    const double edge_bound = harper_edge_bound(d, s);
    if (static_cast<double>(cut) < edge_bound - kTie) {
      report.pass = false;
      report.bad_set = set;
      report.violated = "edge";
      report.observed = static_cast<double>(cut);
      report.required = edge_bound;
      return report;
    }
    const int outside = std::popcount(nbr & ~set & all);
    for (double eps : epsilons) {
      if (static_cast<double>(s) <= (1.0 - eps) * n) {
        const double vertex_bound = eps * s / (10.0 * std::sqrt(d));
        if (static_cast<double>(outside) < vertex_bound - kTie) {
          report.pass = false;
          report.bad_set = set;
          report.violated = "vertex(eps=" + std::to_string(eps) + ")";
          report.observed = static_cast<double>(outside);
          report.required = vertex_bound;
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace cubelab
