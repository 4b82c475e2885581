#include "cubelab/skeleton.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "cubelab/adjacency.hpp"
#include "cubelab/errors.hpp"

namespace cubelab {

std::uint64_t SkeletonGraph::edge_count_in_class(int k) const {
  std::uint64_t c = 0;
  for (const auto& e : edges) {
    if (e.k == k) ++c;
  }
  return c;
}

bool SkeletonGraph::has_edge(VertexId u, VertexId v) const {
  if (u > v) std::swap(u, v);
  const int k = hamming_distance(u, v);
  const SkeletonEdge probe{k, u, v};
  return std::binary_search(edges.begin(), edges.end(), probe,
                            [](const SkeletonEdge& a, const SkeletonEdge& b) {
                              return a < b;
                            });
}

LabeledGraph SkeletonGraph::to_labeled_graph() const {
  std::unordered_map<VertexId, int> index;
  index.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    index[vertices[i]] = static_cast<int>(i);
  }
  Graph g(static_cast<int>(vertices.size()));
  for (const auto& e : edges) g.add_edge(index.at(e.u), index.at(e.v));
  return LabeledGraph{std::move(g), vertices};
}

namespace {

using Clock = std::chrono::steady_clock;

// Flattened pair range [begin, end) over i < j of n vertices, walked in
// (i published ascending, j ascending) order so concatenating worker outputs
// reproduces the serial order.
void scan_pairs(const PercolationSample& sample,
                const std::vector<VertexId>& verts, int k_max,
                std::uint64_t begin, std::uint64_t end,
                Clock::time_point deadline, bool has_deadline,
                std::vector<SkeletonEdge>& out, bool& timed_out) {
  const std::uint64_t n = verts.size();
  if (begin >= end) return;
  // Locate (i, j) of the flattened index `begin`.
  std::uint64_t idx = 0;
  std::uint64_t i = 0;
  while (i + 1 < n) {
    const std::uint64_t row = n - 1 - i;
    if (idx + row > begin) break;
    idx += row;
    ++i;
  }
  std::uint64_t j = i + 1 + (begin - idx);
  std::uint64_t done = begin;
  std::uint64_t since_check = 0;
  while (done < end && i + 1 < n) {
    const VertexId u = verts[i];
    const VertexId v = verts[j];
    const int k = hamming_distance(u, v);
    if (k <= k_max && local_adjacency(sample, u, v)) {
      out.push_back(SkeletonEdge{k, u, v});
    }
    ++done;
    if (has_deadline && (++since_check & 0x3ff) == 0 &&
        Clock::now() > deadline) {
      timed_out = true;
      return;
    }
    if (++j >= n) {
      ++i;
      j = i + 1;
    }
  }
}

}  // namespace

SkeletonGraph build_skeleton(const PercolationSample& sample,
                             const SkeletonBuildOptions& options) {
  if (sample.d > 14) {
    throw GuardError("skeletons are built only up to dimension 14");
  }
  int k_max = options.k_max < 0 ? sample.d : options.k_max;
  if (k_max < 1 || k_max > sample.d) {
    throw GuardError("k_max must lie in [1, d]");
  }

  SkeletonGraph skel;
  skel.d = sample.d;
  skel.p = sample.p;
  skel.seed = sample.seed;
  skel.k_max = k_max;
  skel.vertices = sample.vertices.to_vector();

  const std::uint64_t n = skel.vertices.size();
  const std::uint64_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (pairs > options.max_pairs) {
    throw GuardError("pair count " + std::to_string(pairs) +
                     " exceeds budget of " + std::to_string(options.max_pairs));
  }
  if (pairs == 0) return skel;

  const bool has_deadline = options.budget_seconds > 0.0;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(options.budget_seconds));

  int threads = std::max(1, options.threads);
  threads = static_cast<int>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, pairs)));

  std::vector<std::vector<SkeletonEdge>> results(threads);
  std::vector<char> timeouts(threads, 0);
  if (threads == 1) {
    bool timed_out = false;
    scan_pairs(sample, skel.vertices, k_max, 0, pairs, deadline, has_deadline,
               results[0], timed_out);
    timeouts[0] = timed_out ? 1 : 0;
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t chunk = (pairs + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
      const std::uint64_t hi = std::min(pairs, lo + chunk);
      pool.emplace_back([&, t, lo, hi] {
        bool timed_out = false;
        scan_pairs(sample, skel.vertices, k_max, lo, hi, deadline,
                   has_deadline, results[t], timed_out);
        timeouts[t] = timed_out ? 1 : 0;
      });
    }
    for (auto& th : pool) th.join();
  }
  for (char t : timeouts) {
    if (t) {
      throw BudgetError("skeleton build passed its wall-clock budget of " +
                        std::to_string(options.budget_seconds) + "s");
    }
  }

  for (auto& part : results) {
    skel.edges.insert(skel.edges.end(), part.begin(), part.end());
  }
  std::sort(skel.edges.begin(), skel.edges.end());
  return skel;
}

const std::vector<std::uint64_t>& edge_config_counts(int k) {
  if (k < 1 || k > 4) {
    throw GuardError("interior configuration counts cover 1 <= k <= 4");
  }
  static std::mutex mu;
  static std::map<int, std::vector<std::uint64_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  const VertexId lo = 0;
  const VertexId hi = low_bits(k);
  // Interior vertices of Q^k, in ascending order.
  std::vector<VertexId> interior;
  for (VertexId w = 1; w < hi; ++w) interior.push_back(w);
  const std::size_t icount = interior.size();  // 2^k - 2

  std::vector<std::uint64_t> counts(icount + 1, 0);
  std::vector<VertexId> points;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << icount); ++mask) {
    points.clear();
    points.push_back(lo);
    points.push_back(hi);
    for (std::size_t j = 0; j < icount; ++j) {
      if ((mask >> j) & 1) points.push_back(interior[j]);
    }
    if (hull_adjacent(points, lo, hi, k)) {
      ++counts[std::popcount(mask)];
    }
  }
  return cache.emplace(k, std::move(counts)).first->second;
}

Rational exact_edge_probability_q(const Rational& p, int k) {
  check_probability(p, "vertex retention probability p");
  const std::vector<std::uint64_t>& counts = edge_config_counts(k);
  const std::size_t icount = counts.size() - 1;
  const Rational miss = Rational(1) - p;
  Rational q = 0;
  for (std::size_t j = 0; j <= icount; ++j) {
    if (counts[j] == 0) continue;
    Rational term(static_cast<unsigned long>(counts[j]));
    term *= rational_pow(p, j);
    term *= rational_pow(miss, icount - j);
    q += term;
  }
  return q;
}

}  // namespace cubelab
