#include "cubelab/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "cubelab/eigen_jacobi.hpp"
#include "cubelab/errors.hpp"
#include "cubelab/rng.hpp"

namespace cubelab {

namespace {

// Exact comparison of boundary/size ratios by cross-multiplication.
bool ratio_less(std::uint64_t e1, std::uint64_t s1, std::uint64_t e2,
                std::uint64_t s2) {
  return static_cast<unsigned __int128>(e1) * s2 <
         static_cast<unsigned __int128>(e2) * s1;
}

std::vector<int> mask_to_sorted_indices(std::uint64_t mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

CutEvaluation smallest_component_cut(const Graph& g) {
  auto comps = g.components();
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    if (comps[i].size() < comps[best].size()) best = i;
  }
  CutEvaluation cut;
  cut.side = comps[best];
  cut.boundary = 0;
  cut.ratio = Rational(0);
  cut.certificate = CutCertificate::kExactMin;
  cut.disconnected = true;
  return cut;
}

}  // namespace

CutEvaluation cheeger_exact(const Graph& g, int cutoff) {
  const int n = g.size();
  if (n < 2) throw GuardError("edge expansion needs at least 2 vertices");
  if (cutoff > kHardExactCutoff) {
    throw GuardError("exact enumeration cutoff is capped at " +
                     std::to_string(kHardExactCutoff));
  }
  if (n > cutoff) {
    throw GuardError("graph has " + std::to_string(n) +
                     " vertices, above the exact enumeration cutoff " +
                     std::to_string(cutoff));
  }
  if (g.components().size() > 1) return smallest_component_cut(g);

  const std::vector<std::uint64_t> adj = g.adjacency_masks();
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = g.degree(v);

  // Enumerate all subsets containing vertex 0 by a Gray walk over the other
  // n-1 vertices; every unordered partition {S, S^c} is visited exactly once
  // and both sides are scored, so the pinning loses nothing.
  std::uint64_t current = 1;  // S = {0}
  std::uint64_t boundary = degree[0];
  int size = 1;

  std::uint64_t best_e = boundary;
  std::uint64_t best_s = 1;
  std::uint64_t best_mask = current;
  bool best_complement = false;

  auto consider = [&](std::uint64_t e, std::uint64_t mask, int s) {
    const bool use_complement = 2 * s > n;
    const std::uint64_t cand_size =
        use_complement ? static_cast<std::uint64_t>(n - s)
                       : static_cast<std::uint64_t>(s);
    if (cand_size == 0) return;
    if (ratio_less(e, cand_size, best_e, best_s)) {
      best_e = e;
      best_s = cand_size;
      best_mask = mask;
      best_complement = use_complement;
    }
  };
  consider(boundary, current, size);

  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int v = std::countr_zero(i) + 1;  // vertex toggled this step
    const std::uint64_t bit = std::uint64_t{1} << v;
    if ((current & bit) == 0) {
      boundary += static_cast<std::uint64_t>(degree[v]) -
                  2 * std::popcount(adj[v] & current);
      current |= bit;
      ++size;
    } else {
      current &= ~bit;
      --size;
      boundary -= static_cast<std::uint64_t>(degree[v]) -
                  2 * std::popcount(adj[v] & current);
    }
    consider(boundary, current, size);
  }

  CutEvaluation cut;
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0}
                                       : ((std::uint64_t{1} << n) - 1);
  cut.side = mask_to_sorted_indices(best_complement ? (~best_mask & full)
                                                    : best_mask);
  cut.boundary = best_e;
  cut.ratio = Rational(static_cast<unsigned long>(best_e),
                       static_cast<unsigned long>(best_s));
  cut.ratio.canonicalize();
  cut.certificate = CutCertificate::kExactMin;
  return cut;
}

SpectralBound cheeger_spectral_lower(const Graph& g) {
  const int n = g.size();
  if (n < 2) throw GuardError("edge expansion needs at least 2 vertices");
  if (n > 4096) {
    throw GuardError("spectral bound runs dense eigensolves; |V| <= 4096");
  }
  const EigenDecomposition eig = jacobi_eigen_symmetric(g.laplacian(), n);
  if (eig.max_residual > kEigenResidual) {
    throw InvariantError(
        "eigensolve residual " + std::to_string(eig.max_residual) +
        " exceeds the certified tolerance");
  }
  SpectralBound out;
  out.lambda2 = eig.values[1];
  out.lower = out.lambda2 / 2.0;
  out.residual = eig.max_residual;
  return out;
}

CutEvaluation cheeger_sweep_upper(const Graph& g) {
  const int n = g.size();
  if (n < 2) throw GuardError("edge expansion needs at least 2 vertices");
  if (n > 4096) {
    throw GuardError("sweep cut runs dense eigensolves; |V| <= 4096");
  }
  const EigenDecomposition eig = jacobi_eigen_symmetric(g.laplacian(), n);
  if (eig.max_residual > kEigenResidual) {
    throw InvariantError(
        "eigensolve residual " + std::to_string(eig.max_residual) +
        " exceeds the certified tolerance");
  }
  // Fiedler coordinates; ties broken by vertex id ascending.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double xa = eig.vectors[static_cast<std::size_t>(n) + a];
    const double xb = eig.vectors[static_cast<std::size_t>(n) + b];
    if (xa != xb) return xa < xb;
    return a < b;
  });

  std::vector<char> in_set(n, 0);
  std::uint64_t boundary = 0;
  std::uint64_t best_e = 0;
  std::uint64_t best_s = 0;
  int best_prefix = -1;
  bool best_complement = false;
  for (int k = 0; k < n - 1; ++k) {
    const int v = order[k];
    std::uint64_t inside = 0;
    for (int w : g.neighbors(v)) inside += in_set[w];
    boundary += static_cast<std::uint64_t>(g.degree(v)) - 2 * inside;
    in_set[v] = 1;
    const int s = k + 1;
    const bool use_complement = 2 * s > n;
    const std::uint64_t cand =
        use_complement ? static_cast<std::uint64_t>(n - s)
                       : static_cast<std::uint64_t>(s);
    if (best_prefix < 0 || ratio_less(boundary, cand, best_e, best_s)) {
      best_e = boundary;
      best_s = cand;
      best_prefix = s;
      best_complement = use_complement;
    }
  }

  CutEvaluation cut;
  cut.boundary = best_e;
  cut.ratio = Rational(static_cast<unsigned long>(best_e),
                       static_cast<unsigned long>(best_s));
  cut.ratio.canonicalize();
  cut.certificate = CutCertificate::kSweepUpper;
  if (best_complement) {
    cut.side.assign(order.begin() + best_prefix, order.end());
  } else {
    cut.side.assign(order.begin(), order.begin() + best_prefix);
  }
  std::sort(cut.side.begin(), cut.side.end());
  return cut;
}

std::uint64_t vertex_expansion(const Graph& g, const std::vector<int>& s) {
  std::vector<char> in_set(g.size(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.size()) {
      throw GuardError("set member outside the vertex universe");
    }
    if (in_set[v]) throw GuardError("duplicate member in vertex set");
    in_set[v] = 1;
  }
  return g.outside_neighborhood(in_set);
}

namespace {

// Incremental state for the high-degree probe: membership, neighbour counts
// into S, and |N(S) \ S|.
struct ProbeState {
  const Graph* g = nullptr;
  std::vector<char> in_set;
  std::vector<int> cnt;  // |N(v) cap S|
  std::uint64_t nbr = 0;
  int size = 0;

  explicit ProbeState(const Graph& graph)
      : g(&graph), in_set(graph.size(), 0), cnt(graph.size(), 0) {}

  void add(int u) {
    in_set[u] = 1;
    ++size;
    if (cnt[u] > 0) --nbr;  // u leaves N(S)
    for (int w : g->neighbors(u)) {
      if (++cnt[w] == 1 && !in_set[w]) ++nbr;
    }
  }
  void remove(int u) {
    in_set[u] = 0;
    --size;
    for (int w : g->neighbors(u)) {
      if (--cnt[w] == 0 && !in_set[w]) --nbr;
    }
    if (cnt[u] > 0) ++nbr;  // u rejoins N(S)
  }
  std::int64_t add_delta(int u) const {
    std::int64_t delta = 0;
    if (cnt[u] > 0) --delta;
    for (int w : g->neighbors(u)) {
      if (cnt[w] == 0 && !in_set[w] && w != u) ++delta;
    }
    return delta;
  }
  std::int64_t remove_delta(int u) const {
    std::int64_t delta = 0;
    for (int w : g->neighbors(u)) {
      if (cnt[w] == 1 && !in_set[w]) --delta;
    }
    if (cnt[u] > 0) ++delta;
    return delta;
  }
};

}  // namespace

HighDegreeProbeReport high_degree_set_probe(
    const Graph& g, const std::vector<VertexId>& labels, int d, double alpha,
    std::uint64_t probe_seed, int budget) {
  check_dimension(d);
  if (budget < 1) throw GuardError("probe budget must be at least 1");
  if (labels.size() != static_cast<std::size_t>(g.size())) {
    throw GuardError("label list must cover every graph vertex");
  }
  HighDegreeProbeReport report;
  const int n = g.size();
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  std::vector<int> eligible;
  for (int v = 0; v < n; ++v) {
    if (static_cast<double>(g.degree(v)) >= alpha * d - 1e-9) {
      eligible.push_back(v);
    }
  }
  report.eligible_count = eligible.size();
  if (eligible.empty()) return report;
  report.admissible = true;

  const int cap = std::max(1, (3 * n) / 4);
  std::mt19937_64 gen(probe_seed);

  double best_score = std::numeric_limits<double>::infinity();
  std::vector<int> best_set;
  std::uint64_t best_nbr = 0;

  auto record = [&](const ProbeState& st) {
    if (st.size == 0 || st.size > cap) return;
    const double score =
        static_cast<double>(st.nbr) * sqrt_d / static_cast<double>(st.size);
    if (score < best_score) {
      best_score = score;
      best_nbr = st.nbr;
      best_set.clear();
      for (int v = 0; v < n; ++v) {
        if (st.in_set[v]) best_set.push_back(v);
      }
    }
  };

  std::vector<char> is_eligible(n, 0);
  for (int v : eligible) is_eligible[v] = 1;

  for (int restart = 0; restart < budget; ++restart) {
    ProbeState st(g);
    if (restart == 0) {
      // Canonical start: grow through the eligible vertices by increasing
      // Hamming weight of their cube labels, scoring every prefix.  In the
      // full model this scores each below-middle-layer ball exactly.
      std::vector<int> by_weight = eligible;
      std::sort(by_weight.begin(), by_weight.end(), [&](int a, int b) {
        const int wa = std::popcount(labels[a]);
        const int wb = std::popcount(labels[b]);
        if (wa != wb) return wa < wb;
        return labels[a] < labels[b];
      });
      for (int v : by_weight) {
        if (st.size >= cap) break;
        st.add(v);
        record(st);
      }
    } else {
      const int start =
          eligible[gen() % static_cast<std::uint64_t>(eligible.size())];
      st.add(start);
      record(st);
    }

    const int max_steps = 4 * n + 16;
    for (int step = 0; step < max_steps; ++step) {
      // Best single add/remove by the resulting score.
      double current =
          static_cast<double>(st.nbr) * sqrt_d / std::max(1, st.size);
      double best_move_score = current;
      int move_vertex = -1;
      bool move_is_add = true;
      for (int v : eligible) {
        if (st.in_set[v] || st.size >= cap) continue;
        const double cand_score =
            static_cast<double>(static_cast<std::int64_t>(st.nbr) +
                                st.add_delta(v)) *
            sqrt_d / static_cast<double>(st.size + 1);
        if (cand_score < best_move_score - 1e-15) {
          best_move_score = cand_score;
          move_vertex = v;
          move_is_add = true;
        }
      }
      if (st.size > 1) {
        for (int v = 0; v < n; ++v) {
          if (!st.in_set[v]) continue;
          const double cand_score =
              static_cast<double>(static_cast<std::int64_t>(st.nbr) +
                                  st.remove_delta(v)) *
              sqrt_d / static_cast<double>(st.size - 1);
          if (cand_score < best_move_score - 1e-15) {
            best_move_score = cand_score;
            move_vertex = v;
            move_is_add = false;
          }
        }
      }
      if (move_vertex < 0) break;
      if (move_is_add) {
        st.add(move_vertex);
      } else {
        st.remove(move_vertex);
      }
      record(st);
    }
    ++report.restarts_run;
  }

  report.best_score = best_score;
  report.best_set = std::move(best_set);
  report.best_neighborhood = best_nbr;
  return report;
}

HighDegreeProbeReport high_degree_set_probe(const MixedSample& ms,
                                            double alpha, int budget) {
  const LabeledGraph lg = induced_graph(ms);
  if (lg.graph.size() == 0) {
    HighDegreeProbeReport report;
    return report;
  }
  return high_degree_set_probe(lg.graph, lg.labels, ms.d, alpha,
                               derive_key(ms.seed, RngDomain::kProbe),
                               budget);
}

DegreeDichotomyReport degree_dichotomy_stats(const SkeletonGraph& skeleton,
                                             double alpha, int k) {
  if (k < 1 || k > skeleton.d) throw GuardError("class k must lie in [1, d]");
  if (skeleton.k_max < std::max(1, k)) {
    throw GuardError("skeleton lacks distance class " + std::to_string(k) +
                     "; rebuild with a larger k_max");
  }
  if (alpha <= 0.0 || alpha >= 1.0) {
    throw GuardError("alpha must lie in (0, 1)");
  }
  const int d = skeleton.d;
  DegreeDichotomyReport report;
  report.vertices = skeleton.vertices.size();
  report.threshold_class1 = (1.0 - alpha) * d;

  // p (1-p)^(2^k - 2) alpha^k C(d, k) / 4
  const double p = to_double(skeleton.p);
  double choose = 1.0;
  for (int i = 0; i < k; ++i) {
    choose = choose * static_cast<double>(d - i) / static_cast<double>(i + 1);
  }
  report.threshold_classk = p *
                            std::pow(1.0 - p, std::pow(2.0, k) - 2.0) *
                            std::pow(alpha, k) * choose / 4.0;

  std::unordered_map<VertexId, std::uint64_t> deg1, degk;
  for (const auto& e : skeleton.edges) {
    if (e.k == 1) {
      ++deg1[e.u];
      ++deg1[e.v];
    }
    if (e.k == k) {
      ++degk[e.u];
      ++degk[e.v];
    }
  }
  for (VertexId v : skeleton.vertices) {
    const double d1 = static_cast<double>(deg1.count(v) ? deg1.at(v) : 0);
    const double dk = static_cast<double>(degk.count(v) ? degk.at(v) : 0);
    const bool ok1 = d1 >= report.threshold_class1 - 1e-9;
    const bool okk = dk >= report.threshold_classk - 1e-9;
    if (!ok1 && !okk) {
      ++report.violations;
      report.violating.push_back(v);
    }
  }
  return report;
}

CubeDensity classify_cube_density(const VertexSet& s,
                                  const std::vector<VertexId>& cube_vertices,
                                  const Rational& p, int m) {
  check_probability(p, "density probability p");
  if (m < 0 || cube_vertices.size() != (std::size_t{1} << m)) {
    throw GuardError("cube vertex list must have exactly 2^m entries");
  }
  unsigned long count = 0;
  for (VertexId v : cube_vertices) {
    if (s.contains(v)) ++count;
  }
  const Rational mass = p * Rational(static_cast<unsigned long>(
                                std::uint64_t{1} << m));
  const Rational hi = Rational(2, 3) * mass;
  const Rational lo = Rational(1, 7) * mass;
  const Rational c(count);
  if (c >= hi) return CubeDensity::kDense;
  if (c >= lo) return CubeDensity::kModerate;
  return CubeDensity::kSparse;
}

std::string to_string(CubeDensity d) {
  switch (d) {
    case CubeDensity::kDense:
      return "dense";
    case CubeDensity::kModerate:
      return "moderate";
    case CubeDensity::kSparse:
      return "sparse";
  }
  return "unknown";
}

}  // namespace cubelab
