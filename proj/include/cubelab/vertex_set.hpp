#pragma once
// Dense vertex subsets of Q^d, materialised as a bitset over all 2^d ids.
//
// Materialisation is only allowed for d <= kMaxMaterialisedDimension; larger
// dimensions must stay lazy (see sampling.hpp).  Iteration is always in
// increasing id order, which every deterministic consumer relies on.

#include <cstdint>
#include <vector>

#include "cubelab/bits.hpp"
#include "cubelab/errors.hpp"

namespace cubelab {

inline constexpr int kMaxMaterialisedDimension = 30;

class VertexSet {
 public:
  explicit VertexSet(int d) : d_(d) {
    check_dimension(d);
    if (d > kMaxMaterialisedDimension) {
      throw GuardError("vertex sets materialise only up to dimension " +
                       std::to_string(kMaxMaterialisedDimension));
    }
    words_.resize(word_count(d), 0);
  }

  int dimension() const { return d_; }
  VertexId universe_size() const { return VertexId{1} << d_; }

  bool contains(VertexId v) const {
    return (words_[v >> 6] >> (v & 63)) & 1;
  }
  void insert(VertexId v) {
    check_vertex(d_, v);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  void erase(VertexId v) {
    check_vertex(d_, v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  // Members in increasing id order.
  std::vector<VertexId> to_vector() const {
    std::vector<VertexId> out;
    out.reserve(count());
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        out.push_back((static_cast<VertexId>(wi) << 6) | bit);
        w &= w - 1;
      }
    }
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        fn((static_cast<VertexId>(wi) << 6) | bit);
        w &= w - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& mutable_words() { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  static std::size_t word_count(int d) {
    return d >= 6 ? (std::size_t{1} << (d - 6)) : 1;
  }

 private:
  int d_;
  std::vector<std::uint64_t> words_;
};

}  // namespace cubelab
