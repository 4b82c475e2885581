#pragma once
// Edge expansion h(G) = min over 0 < |S| <= n/2 of e(S, S^c)/|S|, computed
// three ways, plus degree statistics and subcube density classification.
//
//   * cheeger_exact: ground truth by Gray-code enumeration of all subsets
//     containing a pinned vertex, with O(deg) incremental boundary updates.
//     Disconnected graphs return ratio 0 with a smallest component.
//   * cheeger_spectral_lower: lambda_2 / 2 via the discrete Cheeger
//     inequality for the unnormalized Laplacian (e(S,S^c) >=
//     lambda_2 |S| (n-|S|)/n >= lambda_2 |S|/2).  Floating point with a
//     residual certificate; a lower bound only up to the stated tolerance.
//   * cheeger_sweep_upper: best prefix cut along the Fiedler vector,
//     coordinate ties broken by vertex id ascending; exact ratio of an
//     explicit cut, hence always an upper bound.
//
// Exact and sweep values are rationals of an explicit witness; the spectral
// bound is a double and must only be compared with kSpectralSlack slack.

#include <cstdint>
#include <string>
#include <vector>

#include "cubelab/graph.hpp"
#include "cubelab/rational.hpp"
#include "cubelab/sampling.hpp"
#include "cubelab/skeleton.hpp"

namespace cubelab {

// Slack used whenever the floating spectral bound meets an exact rational.
inline constexpr double kSpectralSlack = 1e-8;
// Required eigenpair residual from the Jacobi solve.
inline constexpr double kEigenResidual = 1e-10;

enum class CutCertificate { kExactMin, kSpectralLower, kSweepUpper };

struct CutEvaluation {
  std::vector<int> side;  // vertex indices, ascending, 0 < |side| <= n/2
  std::uint64_t boundary = 0;
  Rational ratio;  // boundary / |side|, exact
  CutCertificate certificate = CutCertificate::kExactMin;
  bool disconnected = false;  // exact only: ratio 0 via a smallest component
};

inline constexpr int kDefaultExactCutoff = 26;
inline constexpr int kHardExactCutoff = 32;

// Exact minimiser.  cutoff limits |V|; raising it above the default is the
// caller's explicit choice, capped at kHardExactCutoff (2^31 subset steps).
CutEvaluation cheeger_exact(const Graph& g, int cutoff = kDefaultExactCutoff);

struct SpectralBound {
  double lower = 0.0;  // lambda_2 / 2
  double lambda2 = 0.0;
  double residual = 0.0;  // certified eigenpair residual
};

// |V| <= 4096 (dense Jacobi eigensolve).
SpectralBound cheeger_spectral_lower(const Graph& g);

// |V| <= 4096; returns an explicit cut, so its ratio is exact.
CutEvaluation cheeger_sweep_upper(const Graph& g);

// |N_G(S) \ S| for S given as vertex indices (duplicates rejected).
std::uint64_t vertex_expansion(const Graph& g, const std::vector<int>& s);

struct HighDegreeProbeReport {
  bool admissible = false;  // some eligible vertex exists
  std::uint64_t eligible_count = 0;
  double best_score = 0.0;          // min |N(S)| sqrt(d) / |S| observed
  std::vector<int> best_set;        // ascending vertex indices
  std::uint64_t best_neighborhood = 0;
  int restarts_run = 0;
};

// Randomized greedy search for sets of high-degree vertices with small
// vertex expansion; an estimator / falsification probe, never a bound.
// Eligibility: induced degree in g at least alpha * d; |S| <= 3 |V| / 4.
// labels[i] is the cube id of graph vertex i; the first restart grows along
// increasing Hamming weight, so low-weight balls are always scored.
HighDegreeProbeReport high_degree_set_probe(
    const Graph& g, const std::vector<VertexId>& labels, int d, double alpha,
    std::uint64_t probe_seed, int budget);

// Convenience wrapper over a mixed sample's induced graph; the probe stream
// is keyed from the sample's seed.
HighDegreeProbeReport high_degree_set_probe(const MixedSample& ms,
                                            double alpha, int budget);

struct DegreeDichotomyReport {
  std::uint64_t vertices = 0;
  std::uint64_t violations = 0;  // vertices failing BOTH thresholds
  double threshold_class1 = 0.0;
  double threshold_classk = 0.0;
  std::vector<VertexId> violating;  // ascending
};

// Every vertex should have class-1 degree >= (1-alpha) d or class-k degree
// >= p (1-p)^(2^k - 2) alpha^k C(d,k) / 4; counts vertices failing both.
// Requires the skeleton to include distance classes 1 and k.
DegreeDichotomyReport degree_dichotomy_stats(const SkeletonGraph& skeleton,
                                             double alpha, int k);

enum class CubeDensity { kDense, kModerate, kSparse };

// Counts |S intersect cube| among the 2^m listed cube vertices:
// dense iff count >= (2/3) p 2^m; moderate iff (1/7) p 2^m <= count <
// (2/3) p 2^m; sparse otherwise.  Thresholds are compared exactly.
CubeDensity classify_cube_density(const VertexSet& s,
                                  const std::vector<VertexId>& cube_vertices,
                                  const Rational& p, int m);

std::string to_string(CubeDensity d);

}  // namespace cubelab
