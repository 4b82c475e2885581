#pragma once
// Vertex adjacency on 0/1 polytopes, decided exactly.
//
// Setting.  X is a set of 0/1 points in dimension dim, u != v are members,
// and P = conv(X).  Every 0/1 point is a vertex of P whenever it lies in X
// (it uniquely maximises the linear functional sum_{i: x_i = 1} x_i -
// sum_{i: x_i = 0} x_i over the whole cube, hence over P), so "u and v are
// adjacent" means the segment [u, v] is a 1-dimensional face of P.
//
// Criterion (segment test).  [u, v] is an edge of P  <=>  the open segment
// (u, v) does not meet conv(X \ {u, v}).
//
// Proof.  First note no third point of X lies on [u, v]: interior points of
// the segment have strictly fractional coordinates wherever u and v differ,
// and 0/1 points cannot match that; the endpoints are excluded by name.
// (=>)  Let y in (u, v) lie in C := conv(X \ {u, v}).  Write y as a convex
// combination of points of X \ {u, v}; none of them lies on [u, v].  If
// [u, v] were a face, every representation of its relative-interior point y
// over X would use only points of X on that face, i.e. u and v themselves —
// contradiction.
// (<=)  Suppose [u, v] is not a face of P.  Faces of P are exactly the
// maximisers of linear functionals; failing that, some x0 in the relative
// interior of [u, v] admits a representation  x0 = a u + b v + s y  with
// a + b + s = 1, a, b >= 0, s > 0, y in C.  Also x0 = m u + (1 - m) v with
// 0 < m < 1.  Subtracting,  (m - a) u + ((1 - m) - b) v = s y.  The two
// coefficients sum to s.  If m - a < 0 then rearranging displays v as a
// convex combination of u and y, i.e. v in conv(X \ {v}) — impossible for a
// vertex of P.  Symmetrically (1 - m) - b >= 0.  If m - a = 0 the equation
// reads ((1 - m) - b) v = s y with (1 - m) - b = s > 0, so y = v in C,
// again impossible; symmetrically for the other endpoint.  Hence both
// coefficients are strictly positive and y = ((m - a)/s) u +
// (((1 - m) - b)/s) v lies on the open segment; so (u, v) meets C.  Both
// directions together give the criterion.                             (qed)
//
// The test is one exact LP:  find lambda >= 0, t with
//     sum_w lambda_w w = v + t (u - v),   sum_w lambda_w = 1,   0 <= t <= 1,
// over w in X \ {u, v}.  Feasible <=> some point of the CLOSED segment lies
// in C.  Since no w equals u or v, a hit at t = 0 or 1 would exhibit an
// endpoint inside C, contradicting vertexhood — so hits, when they exist,
// can always be found on the open segment, and closed-segment feasibility
// is equivalent to the criterion.  Infeasible <=> adjacent.
//
// Locality.  Let S be the smallest subcube containing u and v (coordinates
// where they agree are frozen).  The affine functional
//     g(x) = sum_{i: u_i = v_i = 1} (1 - x_i) + sum_{i: u_i = v_i = 0} x_i
// is nonnegative on the whole cube and vanishes exactly on S.  Every point
// of [u, v] has g = 0, and in any convex representation of such a point the
// (nonnegative) terms g(w) must all vanish — so only members of X inside S
// can participate.  Hence running the segment test against X cap S gives
// the same answer as against all of X, with the subcube coordinates
// compressed away.  This is what makes skeletons of percolated cubes
// computable: adjacency of u, v at Hamming distance k is decided inside a
// k-dimensional LP regardless of the ambient dimension.
//
// Sufficient shortcut.  If X cap S = {u, v} (an "empty" spanned subcube),
// the LP has no columns and is infeasible: u, v are adjacent.  The converse
// fails — adjacency often survives interior points.

#include <vector>

#include "cubelab/bits.hpp"
#include "cubelab/sampling.hpp"

namespace cubelab {

// Exact segment test over an explicit point set.  points must contain u and
// v, be duplicate-free, and every point must fit in dim bits.  dim <= 20.
bool hull_adjacent(const std::vector<VertexId>& points, VertexId u, VertexId v,
                   int dim);

// True iff the smallest subcube spanned by u and v contains no retained
// vertex besides u and v.  Sufficient (not necessary) for adjacency.
bool sufficient_empty_cube(const VertexPercolation& sample, VertexId u,
                           VertexId v);
bool sufficient_empty_cube(const PercolationSample& sample, VertexId u,
                           VertexId v);

// Adjacency of retained u, v in conv(retained vertices), decided inside
// their spanned subcube (see Locality above).  Requires hamming distance
// k <= 20; cost grows with 2^k.
bool local_adjacency(const VertexPercolation& sample, VertexId u, VertexId v);

// Convenience overload reading retention from a materialised sample.
bool local_adjacency(const PercolationSample& sample, VertexId u, VertexId v);

}  // namespace cubelab
