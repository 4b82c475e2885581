#pragma once
// Counter-based deterministic randomness.
//
// Every random decision in the laboratory is a pure function
//   word(seed, domain, counter) -> uint64
// built from the splitmix64 output permutation.  Consequences:
//   * samples are reproducible from (seed, parameters) alone, regardless of
//     evaluation order, thread count, or whether a set is materialised or
//     queried lazily;
//   * distinct decision families (vertex retention, edge retention, thinning,
//     trial streams, probe streams) read disjoint streams via domain keys,
//     so e.g. adding edge draws never perturbs the vertex set;
//   * monotone coupling across retention probabilities p is automatic: the
//     same word is compared against a larger threshold, so the retained set
//     grows pointwise with p.

#include <cstdint>

namespace cubelab {

enum class RngDomain : std::uint64_t {
  kVertex = 0x56455254,      // vertex retention draws, counter = vertex id
  kEdge = 0x45444745,        // edge retention draws, counter = edge index
  kThin = 0x5448494e,        // thinning draws, counter = vertex id
  kTrial = 0x54524941,       // per-trial streams for repeated experiments
  kProbe = 0x50524f42,       // probe/diagnostic streams
  kCacheCheck = 0x43414348,  // cache spot-check selection
  kHandle = 0x48414e44,      // random handle construction
};

// splitmix64 output permutation: a strong 64-bit mixer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Per-(seed, domain) stream key.
inline constexpr std::uint64_t derive_key(std::uint64_t seed, RngDomain dom) {
  return mix64(mix64(seed) ^
               (static_cast<std::uint64_t>(dom) * kGolden));
}

// The counter+1 offset keeps counter 0 away from the key itself.
inline constexpr std::uint64_t counter_word(std::uint64_t key,
                                            std::uint64_t counter) {
  return mix64(key + (counter + 1) * kGolden);
}

inline constexpr std::uint64_t random_word(std::uint64_t seed, RngDomain dom,
                                           std::uint64_t counter) {
  return counter_word(derive_key(seed, dom), counter);
}

// Second-level stream: a trial index opens its own counter sequence.
inline constexpr std::uint64_t subkey(std::uint64_t key,
                                      std::uint64_t index) {
  return mix64(counter_word(key, index) ^ 0xa5a5a5a5a5a5a5a5ULL);
}

}  // namespace cubelab
