#include "cubelab/cube_family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "cubelab/adjacency.hpp"
#include "cubelab/errors.hpp"
#include "cubelab/rng.hpp"
#include "cubelab/sampling.hpp"
#include "cubelab/stats.hpp"
#include "cubelab/vertex_set.hpp"

namespace cubelab {

DirectionSet make_direction_set(int d, std::vector<VertexId> blocks) {
  check_dimension(d);
  VertexId seen = 0;
  int k = -1;
  for (VertexId b : blocks) {
    if (b == 0) throw GuardError("direction blocks must be nonempty");
    if ((b & ~low_bits(d)) != 0) {
      throw GuardError("direction block exceeds the coordinate range");
    }
    if ((b & seen) != 0) {
      throw GuardError("direction blocks must be pairwise disjoint");
    }
    seen |= b;
    const int pc = std::popcount(b);
    if (k == -1) {
      k = pc;
    } else if (pc != k) {
      throw GuardError("direction blocks must share one popcount k");
    }
  }
  std::sort(blocks.begin(), blocks.end());
  DirectionSet ds;
  ds.d = d;
  ds.blocks = std::move(blocks);
  return ds;
}

SubcubeHandle make_handle(DirectionSet directions, VertexId v) {
  check_vertex(directions.d, v);
  // Blocks are disjoint, so the minimum vertex of the cube factorises:
  // within each block keep the smaller of the two residues.
  for (VertexId b : directions.blocks) {
    if (((v ^ b) & b) < (v & b)) v ^= b;
  }
  return SubcubeHandle{std::move(directions), v};
}

std::vector<VertexId> subcube_vertices(const SubcubeHandle& h) {
  const int m = h.directions.m();
  if (m > 20) throw GuardError("subcube enumeration is limited to m <= 20");
  std::vector<VertexId> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
    VertexId v = h.anchor;
    for (int j = 0; j < m; ++j) {
      if ((subset >> j) & 1) v ^= h.directions.blocks[j];
    }
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool anchor_invariance_check(const DirectionSet& directions, VertexId v) {
  const SubcubeHandle reference = make_handle(directions, v);
  for (VertexId u : subcube_vertices(reference)) {
    if (!(make_handle(directions, u) == reference)) return false;
  }
  return true;
}

bool partition_check(const DirectionSet& directions) {
  const int d = directions.d;
  if (d > 20) throw GuardError("partition check enumerates 2^d; d <= 20");
  const int m = directions.m();
  std::unordered_map<VertexId, std::uint64_t> class_sizes;
  const VertexId n = VertexId{1} << d;
  for (VertexId v = 0; v < n; ++v) {
    ++class_sizes[make_handle(directions, v).anchor];
  }
  if (class_sizes.size() != (std::uint64_t{1} << (d - m))) return false;
  for (const auto& [anchor, size] : class_sizes) {
    (void)anchor;
    if (size != (std::uint64_t{1} << m)) return false;
  }
  return true;
}

BigInt direction_set_count(int d, int k, int m) {
  check_dimension(d);
  if (k < 1 || m < 0 || static_cast<long>(k) * m > d) {
    throw GuardError("direction sets need k >= 1, m >= 0, km <= d");
  }
  BigInt numerator, kfact, mfact, rest;
  mpz_fac_ui(numerator.get_mpz_t(), static_cast<unsigned long>(d));
  mpz_fac_ui(kfact.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_fac_ui(mfact.get_mpz_t(), static_cast<unsigned long>(m));
  mpz_fac_ui(rest.get_mpz_t(), static_cast<unsigned long>(d - k * m));
  BigInt kfact_pow;
  mpz_pow_ui(kfact_pow.get_mpz_t(), kfact.get_mpz_t(),
             static_cast<unsigned long>(m));
  BigInt denom = kfact_pow * mfact * rest;
  BigInt count = numerator / denom;
  if (count * denom != numerator) {
    throw InvariantError("direction-set count was not integral");
  }
  return count;
}

BigInt family_size(int d, int k, int m) {
  const BigInt count = direction_set_count(d, k, m);
  BigInt family = count << static_cast<unsigned>(d - m);
  if (m >= 1) {
    // ln(family) <= 2 d ln d, asserted with rounding slack.
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, family.get_mpz_t());
    const double log_family =
        std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
    const double bound = 2.0 * d * std::log(static_cast<double>(d));
    if (log_family > bound + 1e-9) {
      throw InvariantError("family size exceeded its e^(2 d ln d) bound");
    }
  }
  return family;
}

bool gbox_adjacent(const SubcubeHandle& h1, const SubcubeHandle& h2) {
  if (h1.directions.d != h2.directions.d ||
      h1.directions.m() != h2.directions.m() ||
      h1.directions.k() != h2.directions.k()) {
    throw GuardError("box adjacency needs handles with matching (d, k, m)");
  }
  const int m = h1.directions.m();
  if (m < 1) throw GuardError("box adjacency needs m >= 1");
  const std::vector<VertexId> v1 = subcube_vertices(h1);
  const std::vector<VertexId> v2 = subcube_vertices(h2);
  std::size_t shared = 0;
  std::size_t i = 0, j = 0;
  while (i < v1.size() && j < v2.size()) {
    if (v1[i] == v2[j]) {
      ++shared;
      ++i;
      ++j;
    } else if (v1[i] < v2[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return shared == (std::size_t{1} << (m - 1));
}

std::string CubePath::dump() const {
  std::string out;
  char buf[32];
  for (const auto& h : handles) {
    bool first = true;
    for (VertexId b : h.directions.blocks) {
      std::snprintf(buf, sizeof(buf), "0x%llx",
                    static_cast<unsigned long long>(b));
      if (!first) out += ' ';
      out += buf;
      first = false;
    }
    std::snprintf(buf, sizeof(buf), " @ 0x%llx",
                  static_cast<unsigned long long>(h.anchor));
    out += buf;
    out += '\n';
  }
  return out;
}

namespace {

// Lowest `count` set bits of mask, as a mask.
VertexId lowest_bits_of(VertexId mask, int count) {
  VertexId out = 0;
  for (int taken = 0; taken < count; ++taken) {
    if (mask == 0) {
      throw InvariantError("ran out of coordinates during path construction");
    }
    const VertexId bit = mask & (~mask + 1);
    out |= bit;
    mask ^= bit;
  }
  return out;
}

// Mutable walk state: direction blocks (kept sorted), the current
// representative vertex, and the handle trace.
struct WalkState {
  int d = 0;
  int k = 0;
  std::vector<VertexId> blocks;
  VertexId rep = 0;
  std::vector<SubcubeHandle>* trace = nullptr;

  VertexId union_mask() const {
    VertexId u = 0;
    for (VertexId b : blocks) u |= b;
    return u;
  }
  SubcubeHandle handle() const {
    DirectionSet ds;
    ds.d = d;
    ds.blocks = blocks;
    return make_handle(std::move(ds), rep);
  }
  bool has_block(VertexId b) const {
    return std::binary_search(blocks.begin(), blocks.end(), b);
  }

  // One box-graph step: replace old_block by new_block, same representative.
  void swap_block(VertexId old_block, VertexId new_block) {
    auto it = std::find(blocks.begin(), blocks.end(), old_block);
    if (it == blocks.end()) {
      throw InvariantError("attempted to swap a block that is not present");
    }
    *it = new_block;
    std::sort(blocks.begin(), blocks.end());
    trace->push_back(handle());
  }

  // Make e one of the blocks (a few swaps), so the representative can cross
  // it for free.
  void ensure_block(VertexId e) {
    if (has_block(e)) return;
    std::vector<VertexId> hitters;
    for (VertexId b : blocks) {
      if ((b & e) != 0) hitters.push_back(b);
    }
    const VertexId target = hitters.empty() ? blocks.front() : hitters.front();
    for (VertexId b : hitters) {
      if (b == target) continue;
      const VertexId free = low_bits(d) & ~(e | union_mask());
      swap_block(b, lowest_bits_of(free, k));
    }
    swap_block(target, e);
  }

  // Distance-k step of the representative: swap e in, then move inside the
  // cube — the canonical handle is unchanged, so no trace entry is added.
  void flip(VertexId e) {
    if (std::popcount(e) != k) {
      throw InvariantError("flip set has the wrong popcount");
    }
    ensure_block(e);
    const SubcubeHandle before = handle();
    rep ^= e;
    if (!(handle() == before)) {
      throw InvariantError("in-cube representative move changed the handle");
    }
  }
};

}  // namespace

CubePath construct_gbox_path(const SubcubeHandle& h_from,
                             const SubcubeHandle& h_to) {
  const int d = h_from.directions.d;
  const int k = h_from.directions.k();
  const int m = h_from.directions.m();
  if (h_to.directions.d != d || h_to.directions.k() != k ||
      h_to.directions.m() != m) {
    throw GuardError("path endpoints need matching (d, k, m)");
  }
  if (m < 1) throw GuardError("path construction needs m >= 1");
  if (k < 3 || k % 2 == 0) {
    throw GuardError("path construction needs odd k >= 3");
  }
  if (static_cast<long>(d) < 2L * k * k * (m + 1)) {
    throw GuardError("path construction needs d >= 2 k^2 (m + 1)");
  }
  // Work from canonical forms.
  const SubcubeHandle from = make_handle(h_from.directions, h_from.anchor);
  const SubcubeHandle to = make_handle(h_to.directions, h_to.anchor);

  CubePath path;
  path.handles.push_back(from);

  WalkState st;
  st.d = d;
  st.k = k;
  st.blocks = from.directions.blocks;
  st.rep = from.anchor;
  st.trace = &path.handles;

  // Phase (a): move the representative to the target vertex.  Strides of k
  // differing coordinates while possible, then each leftover coordinate is
  // simulated by three k-flips e, f, g with symmetric difference {i}.
  const VertexId target_v = to.anchor;
  while (std::popcount(st.rep ^ target_v) >= k) {
    st.flip(lowest_bits_of(st.rep ^ target_v, k));
  }
  while (st.rep != target_v) {
    const VertexId diff = st.rep ^ target_v;
    const VertexId i_bit = diff & (~diff + 1);
    const VertexId a = lowest_bits_of(low_bits(d) & ~i_bit, k - 1);
    const VertexId e = i_bit | a;
    const VertexId b = lowest_bits_of(a, (k - 1) / 2);
    const VertexId c = lowest_bits_of(low_bits(d) & ~e, (k + 1) / 2);
    const VertexId f = b | c;
    const VertexId g = (a & ~b) | c;
    if ((e ^ f ^ g) != i_bit) {
      throw InvariantError("triple flip does not isolate the step bit");
    }
    const VertexId before = st.rep;
    st.flip(e);
    st.flip(f);
    st.flip(g);
    if ((before ^ st.rep) != i_bit) {
      throw InvariantError("triple flip moved the representative wrongly");
    }
  }

  // Phase (c): rotate the direction set into the target's through fresh
  // intermediate blocks (blocks already in place are kept).
  std::vector<VertexId> to_replace;
  for (VertexId b : st.blocks) {
    if (!std::binary_search(to.directions.blocks.begin(),
                            to.directions.blocks.end(), b)) {
      to_replace.push_back(b);
    }
  }
  std::vector<VertexId> to_insert;
  for (VertexId b : to.directions.blocks) {
    if (!st.has_block(b)) to_insert.push_back(b);
  }
  if (to_replace.size() != to_insert.size()) {
    throw InvariantError("direction rotation lost a block");
  }
  if (!to_replace.empty()) {
    VertexId used = st.union_mask() | to.directions.union_mask();
    std::vector<VertexId> mids;
    for (std::size_t j = 0; j < to_replace.size(); ++j) {
      const VertexId mid = lowest_bits_of(low_bits(d) & ~used, k);
      used |= mid;
      mids.push_back(mid);
    }
    for (std::size_t j = 0; j < to_replace.size(); ++j) {
      st.swap_block(to_replace[j], mids[j]);
    }
    for (std::size_t j = 0; j < mids.size(); ++j) {
      st.swap_block(mids[j], to_insert[j]);
    }
  }

  if (!(path.handles.back() == to)) {
    throw InvariantError("path construction did not reach the target handle");
  }
  // Self-validation: consecutive handles equal or box-adjacent, and the
  // length bound. Audit of the bound: at most floor(d/k) strides plus
  // 3(k-1) simulation flips, each costing at most min(k, m) + 1 swaps, plus
  // 2m rotation swaps; for odd k >= 3 and d >= 2 k^2 (m+1) this is at most
  // (k+1)(d/k + 3k) + 2m <= 2d + 3k^2 + 4k + d/k^2 <= 4kd.
  for (std::size_t i = 1; i < path.handles.size(); ++i) {
    if (path.handles[i] == path.handles[i - 1]) continue;
    if (!gbox_adjacent(path.handles[i], path.handles[i - 1])) {
      throw InvariantError("constructed path contains a non-adjacent step");
    }
  }
  if (path.length() > static_cast<std::size_t>(4) * k * d) {
    throw InvariantError("constructed path exceeded the 4kd length bound");
  }
  return path;
}

DirectionSet random_direction_set(int d, int k, int m, std::uint64_t key,
                                  std::uint64_t index) {
  check_dimension(d);
  if (k < 1 || m < 1 || static_cast<long>(k) * m > d) {
    throw GuardError("random direction sets need k, m >= 1 and km <= d");
  }
  const std::uint64_t stream = subkey(key, index);
  std::uint64_t ctr = 0;
  std::vector<int> free_coords(d);
  for (int i = 0; i < d; ++i) free_coords[i] = i;
  std::vector<VertexId> blocks;
  for (int j = 0; j < m; ++j) {
    VertexId mask = 0;
    for (int t = 0; t < k; ++t) {
      const std::uint64_t w = counter_word(stream, ctr++);
      const std::size_t pick = w % free_coords.size();
      mask |= VertexId{1} << free_coords[pick];
      free_coords.erase(free_coords.begin() +
                        static_cast<std::ptrdiff_t>(pick));
    }
    blocks.push_back(mask);
  }
  return make_direction_set(d, std::move(blocks));
}

SubcubeHandle random_handle(int d, int k, int m, std::uint64_t key,
                            std::uint64_t index) {
  DirectionSet ds = random_direction_set(d, k, m, key, index);
  const std::uint64_t stream = subkey(key, index ^ 0x517cc1b727220a95ULL);
  const VertexId v = counter_word(stream, 0) & low_bits(d);
  return make_handle(std::move(ds), v);
}

CouplingReport coupling_distribution_test(int d, int k, int m,
                                          const Rational& p,
                                          std::uint64_t trials,
                                          double significance,
                                          std::uint64_t seed,
                                          bool self_test) {
  if (m < 1 || m > 3) throw GuardError("coupling test needs 1 <= m <= 3");
  if (k < 1 || k > 4) throw GuardError("coupling test needs 1 <= k <= 4");
  if (static_cast<long>(k) * m > d || d > 12) {
    throw GuardError("coupling test needs km <= d <= 12");
  }
  if (trials < 1) throw GuardError("coupling test needs at least one trial");
  if (significance < 0.0 || significance > 1.0) {
    throw GuardError("significance must lie in [0, 1]");
  }
  check_probability(p, "vertex retention probability p");

  CouplingReport report;
  report.d = d;
  report.k = k;
  report.m = m;
  report.p = p;
  report.q = exact_edge_probability_q(p, k);
  report.trials = trials;
  report.self_test = self_test;

  // Fixed handle: consecutive k-blocks, anchor 0.
  std::vector<VertexId> blocks;
  for (int j = 0; j < m; ++j) {
    blocks.push_back(low_bits(k) << (j * k));
  }
  const SubcubeHandle handle =
      make_handle(make_direction_set(d, blocks), 0);
  const int nv = 1 << m;  // cube vertices, indexed by block subsets
  std::vector<VertexId> cube(nv);
  for (int t = 0; t < nv; ++t) {
    VertexId v = handle.anchor;
    for (int j = 0; j < m; ++j) {
      if ((t >> j) & 1) v ^= handle.directions.blocks[j];
    }
    cube[t] = v;
  }
  // Cube edges in canonical order: t ascending, direction ascending.
  struct CubeEdge {
    int a, b;
  };
  std::vector<CubeEdge> edges;
  for (int t = 0; t < nv; ++t) {
    for (int j = 0; j < m; ++j) {
      if (((t >> j) & 1) == 0) edges.push_back(CubeEdge{t, t | (1 << j)});
    }
  }
  const int ne = static_cast<int>(edges.size());  // m 2^(m-1)

  // Exact product law over configuration classes:
  // key = vertex mask | edge mask << nv.
  const Rational q = report.q;
  const Rational pbar = Rational(1) - p;
  const Rational qbar = Rational(1) - q;
  std::vector<std::uint32_t> keys;
  std::vector<double> expected;
  for (int s = 0; s < (1 << nv); ++s) {
    Rational ps = rational_pow(p, std::popcount(static_cast<unsigned>(s)));
    ps *= rational_pow(pbar, nv - std::popcount(static_cast<unsigned>(s)));
    std::vector<int> live_edges;
    for (int e = 0; e < ne; ++e) {
      if (((s >> edges[e].a) & 1) && ((s >> edges[e].b) & 1)) {
        live_edges.push_back(e);
      }
    }
    const int le = static_cast<int>(live_edges.size());
    for (int fsub = 0; fsub < (1 << le); ++fsub) {
      const int fc = std::popcount(static_cast<unsigned>(fsub));
      Rational prob = ps * rational_pow(q, fc) * rational_pow(qbar, le - fc);
      // Degenerate p or q make some classes impossible; they are excluded
      // from the reference law (observing one is an invariant violation).
      if (sgn(prob) == 0) continue;
      std::uint32_t fmask = 0;
      for (int idx = 0; idx < le; ++idx) {
        if ((fsub >> idx) & 1) fmask |= 1u << live_edges[idx];
      }
      keys.push_back(static_cast<std::uint32_t>(s) | (fmask << nv));
      expected.push_back(to_double(prob) * static_cast<double>(trials));
    }
  }
  std::unordered_map<std::uint32_t, std::size_t> key_index;
  key_index.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) key_index[keys[i]] = i;
  std::vector<double> observed(keys.size(), 0.0);

  // Conditional edge accounting (all cube vertices retained).
  const std::uint32_t full_mask = (1u << nv) - 1;
  std::vector<std::uint64_t> edge_count(ne, 0);
  std::vector<std::uint64_t> pair_count(
      static_cast<std::size_t>(ne) * ne, 0);
  std::uint64_t cond_trials = 0;

  const std::uint64_t base = derive_key(seed, RngDomain::kTrial);
  const RetentionThreshold thr_p = make_threshold(p);
  const RetentionThreshold thr_q = make_threshold(q);

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::uint32_t vmask = 0;
    std::uint32_t emask = 0;
    if (self_test) {
      const std::uint64_t vs = subkey(base, 2 * trial);
      const std::uint64_t es = subkey(base, 2 * trial + 1);
      for (int t = 0; t < nv; ++t) {
        if (thr_p.retains(counter_word(vs, t))) vmask |= 1u << t;
      }
      for (int e = 0; e < ne; ++e) {
        if (((vmask >> edges[e].a) & 1) && ((vmask >> edges[e].b) & 1) &&
            thr_q.retains(counter_word(es, e))) {
          emask |= 1u << e;
        }
      }
    } else {
      const std::uint64_t trial_seed = subkey(base, trial);
      VertexPercolation oracle(d, p, trial_seed);
      for (int t = 0; t < nv; ++t) {
        if (oracle.retained(cube[t])) vmask |= 1u << t;
      }
      for (int e = 0; e < ne; ++e) {
        if (((vmask >> edges[e].a) & 1) && ((vmask >> edges[e].b) & 1) &&
            local_adjacency(oracle, cube[edges[e].a], cube[edges[e].b])) {
          emask |= 1u << e;
        }
      }
    }
    const std::uint32_t key = vmask | (emask << nv);
    const auto it = key_index.find(key);
    if (it == key_index.end()) {
      throw InvariantError("observed an impossible configuration class");
    }
    observed[it->second] += 1.0;
    if (vmask == full_mask) {
      ++cond_trials;
      for (int e = 0; e < ne; ++e) {
        if ((emask >> e) & 1) {
          ++edge_count[e];
          for (int e2 = 0; e2 < ne; ++e2) {
            if ((emask >> e2) & 1) {
              ++pair_count[static_cast<std::size_t>(e) * ne + e2];
            }
          }
        }
      }
    }
  }

  const ChiSquareResult chi =
      chi_square_goodness_of_fit(observed, expected, 5.0);
  report.statistic = chi.statistic;
  report.df = chi.df;
  report.p_value = chi.p_value;
  report.cells_input = chi.cells_input;
  report.cells_used = chi.cells_used;
  report.pass = chi.degenerate || chi.p_value >= significance;

  report.conditional_trials = cond_trials;
  if (cond_trials > 0) {
    for (int e = 0; e < ne; ++e) {
      report.conditional_edge_freq.push_back(
          static_cast<double>(edge_count[e]) /
          static_cast<double>(cond_trials));
    }
    for (int e = 0; e < ne; ++e) {
      const double mean_e = report.conditional_edge_freq[e];
      const double var_e = mean_e * (1.0 - mean_e);
      for (int e2 = e + 1; e2 < ne; ++e2) {
        const double mean_f = report.conditional_edge_freq[e2];
        const double var_f = mean_f * (1.0 - mean_f);
        const double mean_ef =
            static_cast<double>(
                pair_count[static_cast<std::size_t>(e) * ne + e2]) /
            static_cast<double>(cond_trials);
        const double cov = mean_ef - mean_e * mean_f;
        const double denom = std::sqrt(var_e * var_f);
        report.pairwise_edge_corr.push_back(denom > 0.0 ? cov / denom : 0.0);
      }
    }
  }
  return report;
}

ConditionsProbeReport conditions_i_iii_probe(const SkeletonGraph& skeleton,
                                             int k, int m,
                                             const Rational& epsilon,
                                             std::uint64_t max_handles) {
  const int d = skeleton.d;
  if (k < 1 || m < 1 || static_cast<long>(k) * m > d || d > 12) {
    throw GuardError("density probe needs k, m >= 1, km <= d <= 12");
  }
  if (skeleton.k_max < k) {
    throw GuardError("skeleton lacks distance class " + std::to_string(k));
  }
  if (sgn(epsilon) < 0) throw GuardError("epsilon must be nonnegative");

  VertexSet retained(d);
  for (VertexId v : skeleton.vertices) retained.insert(v);

  ConditionsProbeReport report;
  const Rational density =
      Rational(static_cast<unsigned long>(skeleton.vertices.size())) /
      Rational(static_cast<unsigned long>(std::uint64_t{1} << d));
  Rational deviation = density - skeleton.p;
  if (sgn(deviation) < 0) deviation = -deviation;
  report.density_deviation = deviation;

  const Rational mass =
      skeleton.p * Rational(static_cast<unsigned long>(std::uint64_t{1} << m));
  const Rational lo_single = (Rational(1) - epsilon) * mass;
  const Rational hi_single = (Rational(1) + epsilon) * mass;
  const Rational lo_pair = (Rational(1, 2) - epsilon) * mass;
  const Rational hi_pair = (Rational(1, 2) + epsilon) * mass;

  const std::uint64_t key = derive_key(skeleton.seed, RngDomain::kProbe);
  auto count_retained = [&](const std::vector<VertexId>& verts) {
    unsigned long c = 0;
    for (VertexId v : verts) {
      if (retained.contains(v)) ++c;
    }
    return c;
  };

  for (std::uint64_t i = 0; i < max_handles; ++i) {
    const SubcubeHandle h = random_handle(d, k, m, key, 2 * i);
    const Rational c(count_retained(subcube_vertices(h)));
    ++report.handles_checked;
    if (c < lo_single || c > hi_single) ++report.handle_violations;
  }

  if (static_cast<long>(k) * m < d) {
    for (std::uint64_t i = 0; i < max_handles; ++i) {
      const SubcubeHandle h = random_handle(d, k, m, key, 2 * i + 1);
      // Adjacent partner: replace one block with a fresh k-set drawn from
      // the coordinates outside the other blocks.
      const std::uint64_t stream = subkey(key, (i << 1) ^ 0x9e3779b9ULL);
      std::uint64_t ctr = 0;
      const std::size_t r =
          counter_word(stream, ctr++) % static_cast<std::uint64_t>(m);
      VertexId others = 0;
      for (int j = 0; j < m; ++j) {
        if (static_cast<std::size_t>(j) != r) {
          others |= h.directions.blocks[j];
        }
      }
      std::vector<int> pool;
      for (int bit = 0; bit < d; ++bit) {
        if (((others >> bit) & 1) == 0) pool.push_back(bit);
      }
      VertexId fresh = 0;
      std::vector<int> avail = pool;
      for (int t = 0; t < k; ++t) {
        const std::size_t pick =
            counter_word(stream, ctr++) % avail.size();
        fresh |= VertexId{1} << avail[pick];
        avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      if (fresh == h.directions.blocks[r]) {
        // Same block redrawn: force a difference by swapping in the lowest
        // coordinate outside it (exists since km < d).
        VertexId outside = low_bits(d) & ~(others | fresh);
        const VertexId add = outside & (~outside + 1);
        const VertexId drop = fresh & (~fresh + 1);
        fresh = (fresh ^ drop) | add;
      }
      std::vector<VertexId> new_blocks = h.directions.blocks;
      new_blocks[r] = fresh;
      const SubcubeHandle h2 =
          make_handle(make_direction_set(d, std::move(new_blocks)), h.anchor);
      if (!gbox_adjacent(h, h2)) {
        throw InvariantError("probe constructed a non-adjacent handle pair");
      }
      const std::vector<VertexId> v1 = subcube_vertices(h);
      const std::vector<VertexId> v2 = subcube_vertices(h2);
      std::vector<VertexId> shared;
      std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(),
                            std::back_inserter(shared));
      const Rational c(count_retained(shared));
      ++report.pairs_checked;
      if (c < lo_pair || c > hi_pair) ++report.pair_violations;
    }
  }
  return report;
}

}  // namespace cubelab
