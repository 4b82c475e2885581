#pragma once
// Persistence and result emission.
//
// Sample files: a short text manifest (format tag, kind, d, p, q, seed,
// payload sizes) followed by a binary payload — the little-endian words of
// the vertex bitset, then (mixed samples only) the edge list as pairs of
// little-endian 64-bit ids.  Round-trips are bit-exact, so files written
// from projected or thinned samples are faithful even though those are not
// regenerable from (d, p, seed).
//
// Skeleton caches: the same manifest extended with k_max, in a text variant
// (decimal ids, one record per line) and a binary variant (little-endian
// fixed width).  Both round-trip exactly; two runs with equal inputs write
// byte-identical files.  Writers stage to a temporary file and atomically
// rename, so concurrent readers never observe partial caches.
//
// Result rows: a fixed, versioned CSV schema plus a JSON mirror carrying the
// same strings.  Rationals are serialized as "num/den" to stay exact;
// decimal values carry an explicit precision column.

#include <cstdint>
#include <string>
#include <vector>

#include "cubelab/rational.hpp"
#include "cubelab/sampling.hpp"
#include "cubelab/skeleton.hpp"

namespace cubelab {

// ---- sample files ----
void write_vertex_sample(const std::string& path,
                         const PercolationSample& sample);
PercolationSample read_vertex_sample(const std::string& path);

void write_mixed_sample(const std::string& path, const MixedSample& sample);
MixedSample read_mixed_sample(const std::string& path);

// ---- skeleton caches ----
// Canonical cache file name for a build keyed by (d, p, seed, k_max).
std::string skeleton_cache_filename(int d, const Rational& p,
                                    std::uint64_t seed, int k_max);

void write_skeleton(const std::string& path, const SkeletonGraph& skeleton,
                    bool binary = true);
SkeletonGraph read_skeleton(const std::string& path);

// Recompute a random fraction of the vertex pairs of a (possibly loaded)
// skeleton with the in-cube adjacency test and compare against the stored
// edge set.  Pair selection is deterministic given the skeleton's seed.
struct CacheVerifyReport {
  std::uint64_t pairs_total = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t mismatches = 0;
  bool pass() const { return mismatches == 0; }
};
CacheVerifyReport verify_cache(const SkeletonGraph& skeleton,
                               const Rational& fraction = Rational(1, 100));

// ---- result rows ----
// Column values are pre-rendered strings; empty means "not applicable".
// Rationals use "num/den"; `precision` is "exact" for rationals and a
// magnitude like "1e-08" for decimals.
struct ResultRow {
  std::string experiment;
  std::string d, p, q, k, m, b, alpha, epsilon, seed, trials;
  std::string metric;
  std::string value;
  std::string precision;
  double walltime_s = 0.0;
};

inline constexpr char kResultSchema[] = "cubelab-results 1";

// "# cubelab-results 1\n" + the column header line.
std::string csv_header();
std::string csv_row(const ResultRow& row);
// {"schema": ..., "rows": [...]} with exactly the CSV's strings.
std::string json_rows(const std::vector<ResultRow>& rows);

// format is "csv" or "json".  Empty path writes to stdout.  CSV appends,
// emitting the header only when the file is new or empty; JSON rewrites.
void write_rows(const std::string& path, const std::vector<ResultRow>& rows,
                const std::string& format);

}  // namespace cubelab
