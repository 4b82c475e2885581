#include "cubelab/adjacency.hpp"

#include <algorithm>

#include "cubelab/errors.hpp"
#include "cubelab/simplex.hpp"

namespace cubelab {

namespace {

// Core segment test: is [u, v] NOT an edge of conv({u, v} + others)?
// Equivalently: does the segment meet conv(others)?  Exact LP, see header.
bool segment_meets_hull(const std::vector<VertexId>& others, VertexId u,
                        VertexId v, int dim) {
  if (others.empty()) return false;
  const std::size_t cols = others.size() + 2;  // lambdas, t, slack of t <= 1
  const std::size_t m = static_cast<std::size_t>(dim) + 2;
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(cols, 0));
  std::vector<Rational> rhs(m, 0);
  // Coordinate rows: sum_w lambda_w w_i + t (v_i - u_i) = v_i.
  for (int i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < others.size(); ++j) {
      rows[i][j] = static_cast<int>((others[j] >> i) & 1);
    }
    const int ui = static_cast<int>((u >> i) & 1);
    const int vi = static_cast<int>((v >> i) & 1);
    rows[i][others.size()] = vi - ui;
    rhs[i] = vi;
  }
  // Convexity row: sum lambda = 1.
  for (std::size_t j = 0; j < others.size(); ++j) rows[dim][j] = 1;
  rhs[dim] = 1;
  // Segment row: t + slack = 1.
  rows[dim + 1][others.size()] = 1;
  rows[dim + 1][others.size() + 1] = 1;
  rhs[dim + 1] = 1;
  return solve_equality_feasibility(std::move(rows), std::move(rhs)).feasible;
}

}  // namespace

bool hull_adjacent(const std::vector<VertexId>& points, VertexId u, VertexId v,
                   int dim) {
  check_dimension(dim);
  if (dim > 20) {
    throw GuardError("explicit hull adjacency is limited to dimension 20");
  }
  if (u == v) throw GuardError("adjacency needs two distinct vertices");
  check_vertex(dim, u);
  check_vertex(dim, v);
  bool saw_u = false;
  bool saw_v = false;
  std::vector<VertexId> others;
  others.reserve(points.size());
  for (VertexId w : points) {
    check_vertex(dim, w);
    if (w == u) {
      if (saw_u) throw GuardError("duplicate point in hull input");
      saw_u = true;
    } else if (w == v) {
      if (saw_v) throw GuardError("duplicate point in hull input");
      saw_v = true;
    } else {
      others.push_back(w);
    }
  }
  if (!saw_u || !saw_v) {
    throw GuardError("both query vertices must belong to the point set");
  }
  std::sort(others.begin(), others.end());
  if (std::adjacent_find(others.begin(), others.end()) != others.end()) {
    throw GuardError("duplicate point in hull input");
  }
  return !segment_meets_hull(others, u, v, dim);
}

bool sufficient_empty_cube(const VertexPercolation& sample, VertexId u,
                           VertexId v) {
  const int d = sample.dimension();
  if (u == v) throw GuardError("adjacency needs two distinct vertices");
  const SubcubeSpan span = subcube_between(d, u, v);
  for (VertexId w : enumerate_span(span)) {
    if (w != u && w != v && sample.retained(w)) return false;
  }
  return true;
}

bool sufficient_empty_cube(const PercolationSample& sample, VertexId u,
                           VertexId v) {
  if (u == v) throw GuardError("adjacency needs two distinct vertices");
  const SubcubeSpan span = subcube_between(sample.d, u, v);
  for (VertexId w : enumerate_span(span)) {
    if (w != u && w != v && sample.vertices.contains(w)) return false;
  }
  return true;
}

bool local_adjacency(const VertexPercolation& sample, VertexId u, VertexId v) {
  const int d = sample.dimension();
  check_vertex(d, u);
  check_vertex(d, v);
  if (u == v) throw GuardError("adjacency needs two distinct vertices");
  if (!sample.retained(u) || !sample.retained(v)) {
    throw GuardError("adjacency queries need retained vertices");
  }
  const SubcubeSpan span = subcube_between(d, u, v);
  const int k = span.dimension();
  if (k > 20) {
    throw GuardError("adjacency localises to a subcube of dimension <= 20");
  }
  if (k == 1) return true;  // cube edges are polytope edges
  // Collect retained interior points, compressed onto the free coordinates.
  std::vector<VertexId> others;
  for (VertexId w : enumerate_span(span)) {
    if (w != u && w != v && sample.retained(w)) {
      others.push_back(compress_bits(w, span.free_mask));
    }
  }
  if (others.empty()) return true;  // empty spanned subcube shortcut
  const VertexId cu = compress_bits(u, span.free_mask);
  const VertexId cv = compress_bits(v, span.free_mask);
  return !segment_meets_hull(others, cu, cv, k);
}

bool local_adjacency(const PercolationSample& sample, VertexId u, VertexId v) {
  // Materialised samples may be projections, thinnings, or loaded files, so
  // retention is read from the stored set rather than re-derived from coins.
  const int d = sample.d;
  check_vertex(d, u);
  check_vertex(d, v);
  if (u == v) throw GuardError("adjacency needs two distinct vertices");
  if (!sample.vertices.contains(u) || !sample.vertices.contains(v)) {
    throw GuardError("adjacency queries need retained vertices");
  }
  const SubcubeSpan span = subcube_between(d, u, v);
  const int k = span.dimension();
  if (k > 20) {
    throw GuardError("adjacency localises to a subcube of dimension <= 20");
  }
  if (k == 1) return true;
  std::vector<VertexId> others;
  for (VertexId w : enumerate_span(span)) {
    if (w != u && w != v && sample.vertices.contains(w)) {
      others.push_back(compress_bits(w, span.free_mask));
    }
  }
  if (others.empty()) return true;
  const VertexId cu = compress_bits(u, span.free_mask);
  const VertexId cv = compress_bits(v, span.free_mask);
  return !segment_meets_hull(others, cu, cv, k);
}

}  // namespace cubelab
