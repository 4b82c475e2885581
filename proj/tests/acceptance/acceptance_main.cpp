// Acceptance gate: ten end-to-end criteria covering exact skeletons, the
// expansion toolbox, percolation laws, renormalisation lifts, and the cube
// family.  Each criterion prints exactly one [PASS]/[FAIL] line with its
// pinned tolerances; the process exits nonzero if any criterion fails.
#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cubelab/adjacency.hpp"
#include "cubelab/bits.hpp"
#include "cubelab/cube_family.hpp"
#include "cubelab/expansion.hpp"
#include "cubelab/graph.hpp"
#include "cubelab/hypercube.hpp"
#include "cubelab/rational.hpp"
#include "cubelab/rng.hpp"
#include "cubelab/sampling.hpp"
#include "cubelab/skeleton.hpp"

using namespace cubelab;

namespace {

int failures = 0;

void report(int index, bool ok, const std::string& text, double seconds) {
  std::printf("[%s] %2d. %s (%.1fs)\n", ok ? "PASS" : "FAIL", index,
              text.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs one criterion, translating any escaped exception into a FAIL line so
// the remaining criteria still execute.
template <typename Fn>
void criterion(int index, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  try {
    const auto [ok, text] = fn();
    report(index, ok, text, elapsed());
  } catch (const std::exception& e) {
    report(index, false, std::string("exception: ") + e.what(), elapsed());
  }
}

std::string frac(const Rational& r) { return format_rational(r); }

// Exact median (average of the middle pair for even counts).
Rational median(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / Rational(2);
}

// Exact expansion of a skeleton; graphs with fewer than two vertices have no
// cuts and count as expansion 0 here.
Rational exact_h(const SkeletonGraph& sk) {
  const LabeledGraph lg = sk.to_labeled_graph();
  if (lg.labels.size() < 2) return Rational(0);
  return cheeger_exact(lg.graph, kHardExactCutoff).ratio;
}

bool cut_witness_ok(const Graph& g, const CutEvaluation& cut) {
  if (cut.side.empty() ||
      cut.side.size() * 2 > static_cast<std::size_t>(g.size())) {
    return false;
  }
  std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
  for (int v : cut.side) {
    if (v < 0 || v >= g.size() || in[static_cast<std::size_t>(v)]) {
      return false;
    }
    in[static_cast<std::size_t>(v)] = 1;
  }
  if (g.edge_boundary(in) != cut.boundary) return false;
  return cut.ratio ==
         Rational(static_cast<unsigned long>(cut.boundary)) /
             Rational(static_cast<unsigned long>(cut.side.size()));
}

}  // namespace

// 1. Fully retained cubes are recovered exactly: the skeleton is Q^d and its
//    exact edge expansion equals 1.
static std::pair<bool, std::string> criterion_full_cube() {
  bool ok = true;
  for (int d = 2; d <= 4; ++d) {
    const PercolationSample s =
        sample_vertex_percolation(d, Rational(1), static_cast<std::uint64_t>(d));
    const SkeletonGraph sk = build_skeleton(s);
    const LabeledGraph lg = sk.to_labeled_graph();
    const CutEvaluation cut = cheeger_exact(lg.graph);
    ok = ok && lg.labels.size() == (std::size_t{1} << d) &&
         sk.edge_count_in_class(1) ==
             static_cast<std::uint64_t>(d) << (d - 1) &&
         !cut.disconnected && cut.ratio == Rational(1) &&
         cut_witness_ok(lg.graph, cut);
  }
  return {ok,
          "full cubes d = 2, 3, 4: exact edge expansion h = 1/1 with a "
          "verified minimum cut (exact rational equality)"};
}

// 2. The two cube isoperimetry bounds hold with zero counterexamples over
//    every nonempty vertex subset for d = 2, 3, 4.
static std::pair<bool, std::string> criterion_isoperimetry() {
  bool ok = true;
  std::uint64_t subsets = 0;
  for (int d = 2; d <= 4; ++d) {
    const IsoperimetryReport rep = exhaustive_isoperimetry_check(d);
    ok = ok && rep.pass && rep.subsets_checked > 0;
    subsets += rep.subsets_checked;
  }
  return {ok, "edge and vertex isoperimetry bounds: 0 counterexamples over " +
                  std::to_string(subsets) +
                  " subsets of Q^d, d = 2, 3, 4 (exact counting)"};
}

// 3. The subcube-local adjacency decision agrees with the global hull test
//    on every retained pair across a seed/density grid.
static std::pair<bool, std::string> criterion_local_equals_global() {
  const Rational ps[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  std::vector<std::tuple<int, Rational, std::uint64_t>> combos;
  for (int d : {4, 5}) {
    for (const Rational& p : ps) {
      for (std::uint64_t s = 0; s < 7; ++s) combos.emplace_back(d, p, s);
    }
  }
  for (const Rational& p : ps) {
    for (std::uint64_t s = 0; s < 4; ++s) combos.emplace_back(6, p, s);
  }
  combos.emplace_back(7, Rational(1, 2), 0);
  combos.emplace_back(7, Rational(1, 2), 1);

  std::uint64_t pairs = 0;
  std::uint64_t mismatches = 0;
  for (const auto& [d, p, seed] : combos) {
    const PercolationSample s = sample_vertex_percolation(d, p, seed);
    const std::vector<VertexId> pts = s.vertices.to_vector();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        ++pairs;
        const bool global = hull_adjacent(pts, pts[i], pts[j], d);
        const bool local = local_adjacency(s, pts[i], pts[j]);
        if (global != local) ++mismatches;
      }
    }
  }
  return {mismatches == 0 && pairs >= 1000,
          "subcube-local adjacency == global hull adjacency on " +
              std::to_string(pairs) + " retained pairs over " +
              std::to_string(combos.size()) +
              " (d, p, seed) samples, d <= 7 (0 disagreements required)"};
}

// 4. The exact long-diagonal edge law: closed form at k = 2, the lower
//    bound at k = 3, frozen rational anchors, and a Monte Carlo cross-check
//    of q(1/2, 3) on conditioned percolations at d = 9.
static std::pair<bool, std::string> criterion_edge_law() {
  bool ok = true;
  for (int i = 0; i <= 10; ++i) {
    const Rational p = Rational(i) / Rational(10);
    ok = ok && exact_edge_probability_q(p, 2) == Rational(1) - p * p;
    const Rational q3 = exact_edge_probability_q(p, 3);
    ok = ok && q3 >= rational_pow(Rational(1) - p, 6) && q3 <= Rational(1);
  }
  ok = ok && exact_edge_probability_q(Rational(1, 2), 3) == Rational(25, 64);
  ok = ok && exact_edge_probability_q(Rational(1, 3), 3) == Rational(496, 729);
  ok = ok &&
       exact_edge_probability_q(Rational(1, 2), 4) == Rational(1407, 16384);

  // Monte Carlo: fresh d = 9 percolations at p = 1/2; condition on both
  // endpoints of a fixed distance-3 pair being retained.
  const std::uint64_t base = 424242;
  const std::uint64_t trials = 10000;
  std::uint64_t cond = 0;
  std::uint64_t adj = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const VertexId u = random_word(base, RngDomain::kProbe, t) & low_bits(9);
    const VertexId v = u ^ 0b111;
    const std::uint64_t trial_seed = random_word(base, RngDomain::kTrial, t);
    const VertexPercolation vp(9, Rational(1, 2), trial_seed);
    if (!vp.retained(u) || !vp.retained(v)) continue;
    ++cond;
    if (local_adjacency(vp, u, v)) ++adj;
  }
  const double q = 25.0 / 64.0;
  const double freq = static_cast<double>(adj) / static_cast<double>(cond);
  const double se = std::sqrt(q * (1 - q) / static_cast<double>(cond));
  const bool mc_ok = cond >= 1500 && std::abs(freq - q) <= 3.0 * se;
  char mc[160];
  std::snprintf(mc, sizeof(mc),
                "; MC at d = 9: |%.4f - 25/64| <= 3 SE over %llu conditioned "
                "trials",
                freq, static_cast<unsigned long long>(cond));
  return {ok && mc_ok,
          "edge law: q(p,2) = 1 - p^2 on the tenths grid, q(p,3) >= "
          "(1-p)^6, q(1/2,3) = 25/64, q(1/3,3) = 496/729, q(1/2,4) = "
          "1407/16384" +
              std::string(mc)};
}

// 5. Geometry trials match the exact product law: Bonferroni-corrected
//    chi-square over four (k, m) pairs, plus conditional edge frequencies
//    and pairwise correlations consistent with independence.
static std::pair<bool, std::string> criterion_coupling() {
  const double significance = 0.01 / 4.0;  // Bonferroni over four tests
  const std::uint64_t trials = 20000;
  const std::pair<int, int> kms[] = {{2, 1}, {2, 2}, {3, 1}, {3, 2}};
  bool ok = true;
  double min_p = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto [k, m] = kms[i];
    const CouplingReport rep =
        coupling_distribution_test(7, k, m, Rational(1, 2), trials,
                                   significance, 101 + i, /*self_test=*/false);
    ok = ok && rep.pass;
    min_p = std::min(min_p, rep.p_value);
    const double q = rep.q.get_d();
    const double n = static_cast<double>(rep.conditional_trials);
    ok = ok && rep.conditional_trials > 200;
    const double se = std::sqrt(q * (1 - q) / n);
    for (double f : rep.conditional_edge_freq) {
      ok = ok && std::abs(f - q) <= 3.0 * se;
    }
    for (double c : rep.pairwise_edge_corr) {
      ok = ok && std::abs(c) <= 3.0 / std::sqrt(n);
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "coupling vs exact law at d = 7, p = 1/2, (k,m) in {(2,1), "
                "(2,2), (3,1), (3,2)}, %llu trials each: chi-square at "
                "0.0025 per test (min p-value %.3f), freqs within 3 SE, "
                "|corr| <= 3/sqrt(n)",
                static_cast<unsigned long long>(trials), min_p);
  return {ok, buf};
}

// 6. Renormalisation: every edge of a projected skeleton lifts — each
//    retained fiber vertex over one endpoint has a skeleton edge to some
//    retained fiber vertex over the other.
static std::pair<bool, std::string> criterion_renormalisation() {
  const std::pair<int, int> dbs[] = {{6, 1}, {7, 1}, {8, 2}};
  const Rational ps[] = {Rational(1, 4), Rational(1, 2)};
  std::uint64_t violations = 0;
  std::uint64_t edges_checked = 0;
  for (const auto& [d, b] : dbs) {
    for (const Rational& p : ps) {
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PercolationSample sample = sample_vertex_percolation(d, p, seed);
        const SkeletonGraph full = build_skeleton(sample);
        const ProjectionResult proj = project(sample, b);
        const SkeletonGraph sub = build_skeleton(proj.projected);
        auto fiber = [&](VertexId base) {
          std::vector<VertexId> out;
          for (VertexId h = 0; h < (VertexId{1} << b); ++h) {
            out.push_back(base | (h << (d - b)));
          }
          return out;
        };
        auto check_direction = [&](VertexId pu, VertexId pv) {
          for (VertexId w : fiber(pu)) {
            if (!sample.vertices.contains(w)) continue;
            bool found = false;
            for (VertexId x : fiber(pv)) {
              if (!sample.vertices.contains(x)) continue;
              if (full.has_edge(std::min(w, x), std::max(w, x))) {
                found = true;
                break;
              }
            }
            if (!found) ++violations;
          }
        };
        for (const SkeletonEdge& e : sub.edges) {
          ++edges_checked;
          check_direction(e.u, e.v);
          check_direction(e.v, e.u);
        }
      }
    }
  }
  return {violations == 0 && edges_checked > 1000,
          "renormalisation lift over (d,b) in {(6,1), (7,1), (8,2)} x p in "
          "{1/4, 1/2} x 50 seeds: " +
              std::to_string(violations) + " violations across " +
              std::to_string(edges_checked) + " projected edges"};
}

// 7. Cube-family combinatorics: canonical anchors, the induced partition,
//    the counting formula against brute-force enumeration, and the d^(2d)
//    growth bound.
static std::pair<bool, std::string> criterion_family_counting() {
  bool ok = true;

  // Canonical anchors and partitions, exhaustively over the cube.
  const std::vector<std::pair<int, std::vector<VertexId>>> fixtures = {
      {3, {0b111}},
      {7, {0b0000111, 0b0111000}},
      {9, {0b000000111, 0b000111000, 0b111000000}},
  };
  for (const auto& [d, blocks] : fixtures) {
    const DirectionSet ds = make_direction_set(d, blocks);
    ok = ok && partition_check(ds);
    for (VertexId v = 0; v < (VertexId{1} << d); ++v) {
      ok = ok && anchor_invariance_check(ds, v);
    }
  }

  // family_size(7, 3, 2) against direct enumeration of every handle.
  std::uint64_t enumerated = 0;
  {
    std::vector<VertexId> chosen;
    const VertexId limit = VertexId{1} << 7;
    auto extend = [&](auto&& self, VertexId min_mask, VertexId used,
                      int remaining) -> void {
      if (remaining == 0) {
        std::set<VertexId> anchors;
        const DirectionSet ds = make_direction_set(7, chosen);
        for (VertexId v = 0; v < limit; ++v) {
          anchors.insert(make_handle(ds, v).anchor);
        }
        enumerated += anchors.size();
        return;
      }
      for (VertexId mask = min_mask; mask != 0 && mask < limit;
           mask = next_same_popcount(mask)) {
        if ((mask & used) != 0) continue;
        chosen.push_back(mask);
        self(self, next_same_popcount(mask), used | mask, remaining - 1);
        chosen.pop_back();
      }
    };
    extend(extend, low_bits(3), 0, 2);
  }
  ok = ok && enumerated == 2240 && family_size(7, 3, 2) == 2240;

  // Growth bound: the number of direction sets never exceeds d^(2d).
  for (int d = 2; d <= 60; ++d) {
    BigInt bound;
    mpz_pow_ui(bound.get_mpz_t(), BigInt(d).get_mpz_t(),
               static_cast<unsigned long>(2 * d));
    for (int k = 1; k <= d; ++k) {
      for (int m = 1; k * m <= d; ++m) {
        ok = ok && direction_set_count(d, k, m) <= bound;
      }
    }
  }
  return {ok,
          "cube families: canonical anchors + partitions exhaustive at "
          "(d,k,m) = (3,3,1), (7,3,2), (9,3,3); family_size(7,3,2) = 2240 = "
          "direct enumeration; direction-set count <= d^(2d) for all "
          "k*m <= d <= 60"};
}

// 8. Constructed box-graph walks: validated paths between 100 random handle
//    pairs stay within the 4kd length bound at (36,3,1) and (54,3,2).
static std::pair<bool, std::string> criterion_diameter_paths() {
  bool ok = true;
  std::size_t max_len = 0;
  for (const auto& [d, k, m] :
       std::vector<std::tuple<int, int, int>>{{36, 3, 1}, {54, 3, 2}}) {
    const std::uint64_t key = derive_key(2026, RngDomain::kHandle);
    for (std::uint64_t i = 0; i < 100; ++i) {
      const SubcubeHandle from = random_handle(d, k, m, key, 2 * i);
      const SubcubeHandle to = random_handle(d, k, m, key, 2 * i + 1);
      const CubePath path = construct_gbox_path(from, to);
      ok = ok && !path.handles.empty() && path.handles.front() == from &&
           path.handles.back() == to &&
           path.length() <= static_cast<std::size_t>(4 * k * d);
      for (std::size_t s = 0; s + 1 < path.handles.size(); ++s) {
        ok = ok && gbox_adjacent(path.handles[s], path.handles[s + 1]);
      }
      max_len = std::max(max_len, path.length());
    }
  }
  return {ok,
          "box-graph walks: 100 random handle pairs each at (d,k,m) = "
          "(36,3,1) and (54,3,2), all steps adjacent, endpoints exact, max "
          "length " +
              std::to_string(max_len) + " <= 4kd"};
}

// 9. Expansion statistics across 50 seeds: the exact median rises from
//    d = 4 to d = 5 at p = 1/2, spectral certificates of connectivity are
//    the norm for d = 6, 7, 8, and sparser retention expands at least as
//    well as denser retention at d = 5.
static std::pair<bool, std::string> criterion_expansion_statistics() {
  auto medians = [](int d, const Rational& p) {
    std::vector<Rational> hs;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      hs.push_back(exact_h(
          build_skeleton(sample_vertex_percolation(d, p, seed))));
    }
    return median(std::move(hs));
  };
  const Rational med4 = medians(4, Rational(1, 2));
  const Rational med5 = medians(5, Rational(1, 2));
  const Rational med_sparse = medians(5, Rational(1, 4));
  const Rational med_dense = medians(5, Rational(3, 4));

  bool spectral_ok = true;
  std::string fractions;
  for (int d : {6, 7, 8}) {
    int positive = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const SkeletonGraph sk =
          build_skeleton(sample_vertex_percolation(d, Rational(1, 2), seed));
      const LabeledGraph lg = sk.to_labeled_graph();
      if (lg.labels.size() < 2) continue;
      // Pinned: "positive" means lambda_2 > 1e-8.
      if (cheeger_spectral_lower(lg.graph).lambda2 > 1e-8) ++positive;
    }
    spectral_ok = spectral_ok && positive >= 48;  // >= 95% of 50
    fractions += (fractions.empty() ? "" : "/") + std::to_string(positive);
  }

  const bool ok =
      med4 <= med5 && med_sparse >= med_dense && spectral_ok;
  return {ok,
          "expansion statistics over 50 seeds: median exact h " + frac(med4) +
              " (d=4) <= " + frac(med5) + " (d=5) at p = 1/2; lambda_2 > " +
              "1e-8 for " + fractions +
              " of 50 seeds at d = 6/7/8 (>= 48 required); median h " +
              frac(med_sparse) + " (p=1/4) >= " + frac(med_dense) +
              " (p=3/4) at d = 5"};
}

// 10. The three expansion estimators sandwich correctly on every skeleton
//     of a d <= 5 grid: spectral lower <= exact <= sweep upper, with both
//     cut witnesses recomputed from their vertex sets.
static std::pair<bool, std::string> criterion_sandwich() {
  std::uint64_t evaluated = 0;
  std::uint64_t violations = 0;
  for (int d : {3, 4, 5}) {
    for (const Rational& p : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const SkeletonGraph sk =
            build_skeleton(sample_vertex_percolation(d, p, seed));
        const LabeledGraph lg = sk.to_labeled_graph();
        if (lg.labels.size() < 2) continue;
        ++evaluated;
        const CutEvaluation exact = cheeger_exact(lg.graph, kHardExactCutoff);
        const CutEvaluation sweep = cheeger_sweep_upper(lg.graph);
        const SpectralBound spectral = cheeger_spectral_lower(lg.graph);
        const bool fine = spectral.lower <= exact.ratio.get_d() +
                                                kSpectralSlack &&
                          exact.ratio <= sweep.ratio &&
                          cut_witness_ok(lg.graph, exact) &&
                          cut_witness_ok(lg.graph, sweep) &&
                          spectral.residual <= kEigenResidual;
        if (!fine) ++violations;
      }
    }
  }
  return {evaluated >= 200 && violations == 0,
          "estimator sandwich spectral <= exact <= sweep with recomputed "
          "cut witnesses on " +
              std::to_string(evaluated) +
              " skeletons (d <= 5, three densities, 30 seeds; slack 1e-8): " +
              std::to_string(violations) + " violations"};
}

int main() {
  std::printf("cubelab acceptance gate: 10 criteria\n");
  criterion(1, criterion_full_cube);
  criterion(2, criterion_isoperimetry);
  criterion(3, criterion_local_equals_global);
  criterion(4, criterion_edge_law);
  criterion(5, criterion_coupling);
  criterion(6, criterion_renormalisation);
  criterion(7, criterion_family_counting);
  criterion(8, criterion_diameter_paths);
  criterion(9, criterion_expansion_statistics);
  criterion(10, criterion_sandwich);
  std::printf("acceptance: %d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
