#pragma once
// Bit-level primitives for vertices of the d-dimensional hypercube {0,1}^d.
//
// A vertex is identified with the integer whose i-th bit is its i-th
// coordinate, so coordinate operations become word operations.  Everything
// here is deterministic and allocation-free except for the enumeration
// helpers, which fill caller-visible vectors in increasing integer order.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubelab/errors.hpp"

namespace cubelab {

using VertexId = std::uint64_t;

// Dimensions live in one machine word; the id of a vertex of Q^d needs d bits.
inline constexpr int kMaxDimension = 63;

inline void check_dimension(int d) {
  if (d < 1 || d > kMaxDimension) {
    throw GuardError("dimension must be in [1, " +
                     std::to_string(kMaxDimension) + "], got " +
                     std::to_string(d));
  }
}

inline void check_vertex(int d, VertexId v) {
  check_dimension(d);
  if (d < 64 && (v >> d) != 0) {
    throw GuardError("vertex id " + std::to_string(v) +
                     " has bits above dimension " + std::to_string(d));
  }
}

// Mask with the low d bits set: the full vertex range of Q^d.
inline constexpr VertexId low_bits(int d) {
  return d >= 64 ? ~VertexId{0} : ((VertexId{1} << d) - 1);
}

inline int hamming_distance(VertexId u, VertexId v) {
  return std::popcount(u ^ v);
}

// The smallest subcube containing two vertices: fixed coordinates come from
// either endpoint (they agree there), free coordinates are where they differ.
struct SubcubeSpan {
  VertexId base = 0;       // fixed coordinates, zero on the free ones
  VertexId free_mask = 0;  // coordinates that vary inside the subcube

  int dimension() const { return std::popcount(free_mask); }
  bool contains(VertexId v) const { return (v & ~free_mask) == base; }
  friend bool operator==(const SubcubeSpan&, const SubcubeSpan&) = default;
};

inline SubcubeSpan subcube_between(int d, VertexId u, VertexId v) {
  check_vertex(d, u);
  check_vertex(d, v);
  const VertexId free = u ^ v;
  return SubcubeSpan{u & ~free, free};
}

// All vertices of a subcube in increasing integer order.  Submasks of
// free_mask are enumerated ascending via s -> (s - free) & free, which walks
// them in increasing value; OR-ing the disjoint base keeps the order.
inline std::vector<VertexId> enumerate_span(const SubcubeSpan& span) {
  if ((span.base & span.free_mask) != 0) {
    throw GuardError("subcube base overlaps its free mask");
  }
  std::vector<VertexId> out;
  out.reserve(VertexId{1} << span.dimension());
  VertexId s = 0;
  do {
    out.push_back(span.base | s);
    s = (s - span.free_mask) & span.free_mask;
  } while (s != 0);
  return out;
}

// Next bitmask with the same popcount (Gosper's hack).  Returns 0 when the
// input was the largest such mask below 2^63.
inline VertexId next_same_popcount(VertexId x) {
  const VertexId c = x & (~x + 1);
  const VertexId r = x + c;
  if (r == 0) return 0;
  return (((x ^ r) >> 2) / c) | r;
}

// All vertices at Hamming distance exactly k from v inside Q^d, produced in
// increasing order of the flipped-coordinate mask.
inline std::vector<VertexId> distance_k_neighbors(int d, VertexId v, int k) {
  check_vertex(d, v);
  if (k < 0 || k > d) {
    throw GuardError("distance class k must be in [0, d]");
  }
  if (k == 0) return {v};
  std::vector<VertexId> out;
  const VertexId limit = VertexId{1} << d;
  for (VertexId mask = (VertexId{1} << k) - 1; mask != 0 && mask < limit;
       mask = next_same_popcount(mask)) {
    out.push_back(v ^ mask);
  }
  return out;
}

// Gather the bits of x sitting at the set positions of mask into the low
// bits of the result, preserving order (software PEXT).
inline VertexId compress_bits(VertexId x, VertexId mask) {
  VertexId out = 0;
  int idx = 0;
  while (mask != 0) {
    const int bit = std::countr_zero(mask);
    out |= ((x >> bit) & 1) << idx;
    ++idx;
    mask &= mask - 1;
  }
  return out;
}

// Inverse of compress_bits: spread the low bits of x to the set positions of
// mask (software PDEP).
inline VertexId expand_bits(VertexId x, VertexId mask) {
  VertexId out = 0;
  int idx = 0;
  while (mask != 0) {
    const int bit = std::countr_zero(mask);
    out |= ((x >> idx) & 1) << bit;
    ++idx;
    mask &= mask - 1;
  }
  return out;
}

// Delete bit position i from u: bits above i shift down one slot.  Packs the
// 2^(d-1) vertices with coordinate i fixed into a contiguous index range.
inline VertexId squeeze_bit(VertexId u, int i) {
  const VertexId low = u & ((VertexId{1} << i) - 1);
  return ((u >> (i + 1)) << i) | low;
}

}  // namespace cubelab
