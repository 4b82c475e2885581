#include "cubelab/sampling.hpp"

#include <unordered_map>

#include "cubelab/errors.hpp"

namespace cubelab {

VertexPercolation::VertexPercolation(int d, Rational p, std::uint64_t seed)
    : d_(d), p_(std::move(p)), seed_(seed) {
  check_dimension(d);
  check_probability(p_, "vertex retention probability p");
  threshold_ = make_threshold(p_);
  key_ = derive_key(seed, RngDomain::kVertex);
}

PercolationSample sample_vertex_percolation(int d, const Rational& p,
                                            std::uint64_t seed) {
  VertexPercolation oracle(d, p, seed);
  PercolationSample sample(d, p, seed);
  const VertexId n = VertexId{1} << d;
  for (VertexId v = 0; v < n; ++v) {
    if (oracle.retained(v)) sample.vertices.insert(v);
  }
  return sample;
}

EdgePercolation::EdgePercolation(int d, Rational q, std::uint64_t seed)
    : d_(d), q_(std::move(q)) {
  check_dimension(d);
  check_probability(q_, "edge retention probability q");
  threshold_ = make_threshold(q_);
  key_ = derive_key(seed, RngDomain::kEdge);
}

bool EdgePercolation::retained(VertexId u, VertexId v) const {
  check_vertex(d_, u);
  check_vertex(d_, v);
  const VertexId diff = u ^ v;
  if (std::popcount(diff) != 1) {
    throw GuardError("edge coins exist only for cube-adjacent vertices");
  }
  const int i = std::countr_zero(diff);
  const VertexId lower = u & ~diff;
  return threshold_.retains(
      counter_word(key_, cube_edge_index(d_, lower, i)));
}

MixedSample sample_mixed(int d, const Rational& p, const Rational& q,
                         std::uint64_t seed) {
  check_dimension(d);
  if (d > 16) {
    throw GuardError("mixed samples materialise edges only up to d = 16");
  }
  VertexPercolation vertex_oracle(d, p, seed);
  EdgePercolation edge_oracle(d, q, seed);
  MixedSample sample(d, p, q, seed);
  const VertexId n = VertexId{1} << d;
  for (VertexId v = 0; v < n; ++v) {
    if (vertex_oracle.retained(v)) sample.vertices.insert(v);
  }
  // Ascending (u, v) order: u ascending, then direction of the higher bit.
  for (VertexId u = 0; u < n; ++u) {
    if (!sample.vertices.contains(u)) continue;
    for (int i = 0; i < d; ++i) {
      const VertexId w = u | (VertexId{1} << i);
      if (w == u || !sample.vertices.contains(w)) continue;
      if (edge_oracle.retained(u, w)) sample.edges.emplace_back(u, w);
    }
  }
  return sample;
}

LabeledGraph induced_graph(const MixedSample& sample) {
  std::vector<VertexId> labels = sample.vertices.to_vector();
  std::unordered_map<VertexId, int> index;
  index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    index[labels[i]] = static_cast<int>(i);
  }
  Graph g(static_cast<int>(labels.size()));
  for (const auto& [u, v] : sample.edges) {
    g.add_edge(index.at(u), index.at(v));
  }
  return LabeledGraph{std::move(g), std::move(labels)};
}

LabeledGraph induced_cube_graph(const PercolationSample& sample) {
  std::vector<VertexId> labels = sample.vertices.to_vector();
  std::unordered_map<VertexId, int> index;
  index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    index[labels[i]] = static_cast<int>(i);
  }
  Graph g(static_cast<int>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const VertexId u = labels[i];
    for (int bit = 0; bit < sample.d; ++bit) {
      const VertexId w = u | (VertexId{1} << bit);
      if (w == u) continue;
      auto it = index.find(w);
      if (it != index.end()) g.add_edge(static_cast<int>(i), it->second);
    }
  }
  return LabeledGraph{std::move(g), std::move(labels)};
}

ProjectionResult project(const PercolationSample& sample, int b) {
  if (b < 0 || b >= sample.d) {
    throw GuardError("projection needs 0 <= b < d");
  }
  const int dp = sample.d - b;
  // rho = 1 - (1 - p)^(2^b), exactly.
  const Rational miss = rational_pow(Rational(1) - sample.p,
                                     1UL << static_cast<unsigned>(b));
  Rational rho = Rational(1) - miss;
  ProjectionResult out{PercolationSample(dp, rho, sample.seed), rho, b};
  sample.vertices.for_each([&](VertexId v) {
    const VertexId image = v & low_bits(dp);
    if (!out.projected.vertices.contains(image)) {
      out.projected.vertices.insert(image);
    }
  });
  return out;
}

std::map<std::uint32_t, std::uint64_t> fiber_census(
    const PercolationSample& sample, int b) {
  if (b < 0 || b >= sample.d) {
    throw GuardError("fiber census needs 0 <= b < d");
  }
  const int dp = sample.d - b;
  std::unordered_map<VertexId, std::uint32_t> occupancy;
  sample.vertices.for_each(
      [&](VertexId v) { ++occupancy[v & low_bits(dp)]; });
  std::map<std::uint32_t, std::uint64_t> census;
  for (const auto& [fiber, count] : occupancy) {
    (void)fiber;
    ++census[count];
  }
  const std::uint64_t empty_fibers =
      (std::uint64_t{1} << dp) - occupancy.size();
  if (empty_fibers > 0) census[0] = empty_fibers;
  return census;
}

PercolationSample thin(const PercolationSample& sample, const Rational& r) {
  check_probability(r, "thinning probability r");
  PercolationSample out(sample.d, sample.p * r, sample.seed);
  const RetentionThreshold thr = make_threshold(r);
  const std::uint64_t key = derive_key(sample.seed, RngDomain::kThin);
  sample.vertices.for_each([&](VertexId v) {
    if (thr.retains(counter_word(key, v))) out.vertices.insert(v);
  });
  return out;
}

}  // namespace cubelab
