#include "cubelab/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "cubelab/cube_family.hpp"
#include "cubelab/errors.hpp"
#include "cubelab/expansion.hpp"
#include "cubelab/hypercube.hpp"
#include "cubelab/io.hpp"
#include "cubelab/rng.hpp"
#include "cubelab/sampling.hpp"
#include "cubelab/skeleton.hpp"

namespace cubelab {

namespace {

constexpr char kExact[] = "exact";
constexpr char kPrecSpectral[] = "1e-08";
constexpr char kPrecStat[] = "1e-09";

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Overall command budget; expired() throws so partial results can be
// flagged by the caller.
class Budget {
 public:
  explicit Budget(double seconds) : limit_(seconds) {}
  double remaining() const {
    if (limit_ <= 0.0) return 0.0;  // 0 means "no budget" downstream
    const double left = limit_ - timer_.seconds();
    if (left <= 0.0) throw BudgetError("command wall-time budget");
    return left;
  }

 private:
  double limit_;
  Timer timer_;
};

std::string dec(std::uint64_t v) { return std::to_string(v); }
std::string dec(int v) { return std::to_string(v); }

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}
std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void emit_rows(const CommandOptions& o, const std::vector<ResultRow>& rows,
               bool stdout_when_unset) {
  if (!o.out.empty()) {
    write_rows(o.out, rows, o.format);
  } else if (stdout_when_unset) {
    write_rows("", rows, o.format);
  }
}

int scan_exact_cutoff(int d) {
  // The default enumeration cutoff (26) would silently drop exact values for
  // the densest small-d graphs (a full 5-cube has 32 vertices), so scans of
  // d <= 5 raise it to the hard cap; the walk is 2^31 steps at worst.
  return d <= 5 ? kHardExactCutoff : kDefaultExactCutoff;
}

SkeletonGraph build_for_command(const CommandOptions& o, const Rational& p,
                                std::uint64_t seed, int k_max,
                                double budget_left) {
  const PercolationSample sample =
      sample_vertex_percolation(o.d, p, seed);
  SkeletonBuildOptions build;
  build.k_max = k_max;
  build.threads = o.threads;
  build.budget_seconds = budget_left;
  return build_skeleton(sample, build);
}

std::vector<VertexId> fiber(int d, int b, VertexId base) {
  std::vector<VertexId> out;
  out.reserve(std::size_t{1} << b);
  for (VertexId h = 0; h < (VertexId{1} << b); ++h) {
    out.push_back(base | (h << (d - b)));
  }
  return out;
}

void require_d(const CommandOptions& o) {
  if (o.d < 1) throw GuardError("--d is required and must be positive");
}

}  // namespace

int cmd_sample(const CommandOptions& o) {
  require_d(o);
  Timer timer;
  if (o.q_set) {
    const MixedSample ms = sample_mixed(o.d, o.p, o.q, o.seed);
    const std::string path =
        o.out.empty() ? "mixed_d" + dec(o.d) + "_s" + dec(o.seed) + ".sample"
                      : o.out;
    write_mixed_sample(path, ms);
    std::cout << "mixed sample d=" << o.d << " p=" << format_rational(o.p)
              << " q=" << format_rational(o.q) << " seed=" << o.seed << ": "
              << ms.vertices.count() << " vertices, " << ms.edges.size()
              << " edges -> " << path << " (" << fixed6(timer.seconds())
              << "s)\n";
  } else {
    const PercolationSample s = sample_vertex_percolation(o.d, o.p, o.seed);
    const std::string path =
        o.out.empty() ? "vertex_d" + dec(o.d) + "_s" + dec(o.seed) + ".sample"
                      : o.out;
    write_vertex_sample(path, s);
    std::cout << "vertex sample d=" << o.d << " p=" << format_rational(o.p)
              << " seed=" << o.seed << ": " << s.vertices.count()
              << " vertices -> " << path << " (" << fixed6(timer.seconds())
              << "s)\n";
  }
  return 0;
}

int cmd_skeleton(const CommandOptions& o) {
  require_d(o);
  Timer timer;
  const int k_max = o.k >= 1 ? o.k : o.d;
  const std::string dir = o.out.empty() ? "." : o.out;
  std::filesystem::create_directories(dir);
  const std::string path =
      dir + "/" + skeleton_cache_filename(o.d, o.p, o.seed, k_max);

  SkeletonGraph sk;
  bool hit = false;
  if (std::filesystem::exists(path)) {
    sk = read_skeleton(path);
    hit = true;
  } else {
    sk = build_for_command(o, o.p, o.seed, k_max, o.budget_seconds);
    write_skeleton(path, sk, /*binary=*/true);
  }

  std::cout << "skeleton d=" << sk.d << " p=" << format_rational(sk.p)
            << " seed=" << sk.seed << " k_max=" << sk.k_max << ": "
            << sk.vertices.size() << " vertices, " << sk.edges.size()
            << " edges [" << (hit ? "cache hit" : "built") << ": " << path
            << "]\n";
  for (int k = 1; k <= sk.k_max; ++k) {
    const std::uint64_t c = sk.edge_count_in_class(k);
    if (c != 0) std::cout << "  distance " << k << ": " << c << " edges\n";
  }

  if (o.verify_cache) {
    const CacheVerifyReport rep = verify_cache(sk);
    std::cout << "cache verification: " << rep.pairs_checked << " of "
              << rep.pairs_total << " pairs recomputed, " << rep.mismatches
              << " mismatches\n";
    if (!rep.pass()) return 2;
  }
  std::cout << "done in " << fixed6(timer.seconds()) << "s\n";
  return 0;
}

int cmd_cheeger(const CommandOptions& o) {
  require_d(o);
  if (o.method != "exact" && o.method != "spectral" && o.method != "sweep" &&
      o.method != "all") {
    throw GuardError("--method must be exact, spectral, sweep, or all");
  }
  Timer timer;
  const SkeletonGraph sk =
      build_for_command(o, o.p, o.seed, o.d, o.budget_seconds);
  const LabeledGraph lg = sk.to_labeled_graph();
  const std::size_t n = lg.labels.size();
  std::cout << "skeleton d=" << o.d << " p=" << format_rational(o.p)
            << " seed=" << o.seed << ": " << n << " vertices, "
            << sk.edges.size() << " edges\n";

  std::vector<ResultRow> rows;
  ResultRow base;
  base.experiment = "cheeger";
  base.d = dec(o.d);
  base.p = format_rational(o.p);
  base.seed = dec(o.seed);

  if (n < 2) {
    std::cout << "fewer than 2 vertices; expansion is undefined\n";
    ResultRow r = base;
    r.metric = "num_vertices";
    r.value = dec(static_cast<std::uint64_t>(n));
    r.precision = kExact;
    r.walltime_s = timer.seconds();
    rows.push_back(r);
    emit_rows(o, rows, false);
    return 0;
  }

  const bool want_exact = o.method == "exact" || o.method == "all";
  const bool want_spectral = o.method == "spectral" || o.method == "all";
  const bool want_sweep = o.method == "sweep" || o.method == "all";

  CutEvaluation exact;
  bool have_exact = false;
  if (want_exact) {
    exact = cheeger_exact(lg.graph, scan_exact_cutoff(o.d));
    have_exact = true;
    std::cout << "exact h = " << format_rational(exact.ratio) << " (~"
              << fixed6(to_double(exact.ratio)) << "), boundary "
              << exact.boundary << ", |S| = " << exact.side.size()
              << (exact.disconnected ? " [disconnected]" : "") << "\n";
    std::cout << "  witness S:";
    for (std::size_t i = 0; i < exact.side.size() && i < 64; ++i) {
      char buf[24];
      std::snprintf(buf, sizeof(buf), " 0x%llx",
                    static_cast<unsigned long long>(
                        lg.labels[static_cast<std::size_t>(exact.side[i])]));
      std::cout << buf;
    }
    if (exact.side.size() > 64) std::cout << " ...";
    std::cout << "\n";
    ResultRow r = base;
    r.metric = "exact_h";
    r.value = format_rational(exact.ratio);
    r.precision = kExact;
    rows.push_back(r);
    r.metric = "exact_boundary";
    r.value = dec(exact.boundary);
    rows.push_back(r);
    r.metric = "exact_side_size";
    r.value = dec(static_cast<std::uint64_t>(exact.side.size()));
    rows.push_back(r);
  }

  SpectralBound sb;
  bool have_spectral = false;
  if (want_spectral) {
    sb = cheeger_spectral_lower(lg.graph);
    have_spectral = true;
    std::cout << "spectral lower = " << sci(sb.lower)
              << " (lambda2 = " << sci(sb.lambda2)
              << ", residual = " << sci(sb.residual) << ")\n";
    ResultRow r = base;
    r.metric = "spectral_lower";
    r.value = sci(sb.lower);
    r.precision = kPrecSpectral;
    rows.push_back(r);
    r.metric = "lambda2";
    r.value = sci(sb.lambda2);
    rows.push_back(r);
  }

  CutEvaluation sweep;
  bool have_sweep = false;
  if (want_sweep) {
    sweep = cheeger_sweep_upper(lg.graph);
    have_sweep = true;
    std::cout << "sweep upper = " << format_rational(sweep.ratio) << " (~"
              << fixed6(to_double(sweep.ratio))
              << "), |S| = " << sweep.side.size() << "\n";
    ResultRow r = base;
    r.metric = "sweep_upper";
    r.value = format_rational(sweep.ratio);
    r.precision = kExact;
    rows.push_back(r);
  }

  // The three estimates must sandwich whenever they coexist.
  if (have_exact && have_spectral &&
      sb.lower > to_double(exact.ratio) + kSpectralSlack) {
    throw InvariantError("spectral lower bound exceeds the exact minimum");
  }
  if (have_exact && have_sweep && sweep.ratio < exact.ratio) {
    throw InvariantError("sweep upper bound is below the exact minimum");
  }

  for (auto& r : rows) r.walltime_s = timer.seconds();
  emit_rows(o, rows, false);
  return 0;
}

int cmd_expansion_scan(const CommandOptions& o) {
  std::vector<int> ds = o.d_grid;
  if (ds.empty()) {
    require_d(o);
    ds.push_back(o.d);
  }
  std::vector<Rational> ps;
  for (const std::string& s : o.p_grid) ps.push_back(parse_rational(s));
  if (ps.empty()) ps.push_back(o.p);
  if (o.seeds < 1) throw GuardError("--seeds must be at least 1");

  Budget budget(o.budget_seconds);
  std::vector<ResultRow> rows;
  bool partial = false;
  try {
    for (int d : ds) {
      for (const Rational& p : ps) {
        for (std::uint64_t s = o.seed; s < o.seed + o.seeds; ++s) {
          Timer point_timer;
          const double left =
              o.budget_seconds > 0.0 ? budget.remaining() : 0.0;
          CommandOptions po = o;
          po.d = d;
          const SkeletonGraph sk = build_for_command(po, p, s, d, left);
          const LabeledGraph lg = sk.to_labeled_graph();
          const std::size_t n = lg.labels.size();

          ResultRow base;
          base.experiment = "expansion-scan";
          base.d = dec(d);
          base.p = format_rational(p);
          base.seed = dec(s);

          std::vector<ResultRow> point;
          ResultRow r = base;
          r.metric = "num_vertices";
          r.value = dec(static_cast<std::uint64_t>(n));
          r.precision = kExact;
          point.push_back(r);

          if (n >= 1) {
            std::uint64_t min_deg = ~std::uint64_t{0};
            for (std::size_t i = 0; i < n; ++i) {
              min_deg = std::min(
                  min_deg,
                  static_cast<std::uint64_t>(
                      lg.graph.neighbors(static_cast<int>(i)).size()));
            }
            r.metric = "min_degree";
            r.value = dec(min_deg);
            point.push_back(r);
          }
          for (int k = 1; k <= sk.k_max; ++k) {
            r = base;
            r.metric = "class_edges";
            r.k = dec(k);
            r.value = dec(sk.edge_count_in_class(k));
            r.precision = kExact;
            point.push_back(r);
          }
          if (n >= 2 &&
              n <= static_cast<std::size_t>(scan_exact_cutoff(d))) {
            const CutEvaluation exact =
                cheeger_exact(lg.graph, scan_exact_cutoff(d));
            r = base;
            r.metric = "exact_h";
            r.value = format_rational(exact.ratio);
            r.precision = kExact;
            point.push_back(r);
          }
          if (n >= 2 && n <= 4096) {
            const SpectralBound sb = cheeger_spectral_lower(lg.graph);
            r = base;
            r.metric = "spectral_lower";
            r.value = sci(sb.lower);
            r.precision = kPrecSpectral;
            point.push_back(r);
            const CutEvaluation sweep = cheeger_sweep_upper(lg.graph);
            r = base;
            r.metric = "sweep_upper";
            r.value = format_rational(sweep.ratio);
            r.precision = kExact;
            point.push_back(r);
          }
          for (auto& row : point) row.walltime_s = point_timer.seconds();
          rows.insert(rows.end(), point.begin(), point.end());
          std::cerr << "scan d=" << d << " p=" << format_rational(p)
                    << " seed=" << s << ": n=" << n << " ("
                    << fixed6(point_timer.seconds()) << "s)\n";
        }
      }
    }
  } catch (const BudgetError& e) {
    partial = true;
    ResultRow r;
    r.experiment = "expansion-scan";
    r.metric = "partial";
    r.value = "1";
    r.precision = kExact;
    rows.push_back(r);
    std::cerr << e.what() << "; emitting partial results\n";
  }
  emit_rows(o, rows, true);
  return partial ? 1 : 0;
}

int cmd_renorm_check(const CommandOptions& o) {
  require_d(o);
  if (o.d > 8) throw GuardError("renorm check supports d <= 8");
  if (o.b < 0 || o.b > 2) throw GuardError("renorm check supports 0 <= b <= 2");
  if (o.b >= o.d) throw GuardError("renorm check needs b < d");
  Timer timer;
  Budget budget(o.budget_seconds);

  std::vector<ResultRow> rows;
  std::uint64_t total_violations = 0;
  bool partial = false;
  try {
    for (std::uint64_t s = o.seed; s < o.seed + o.seeds; ++s) {
      const double left = o.budget_seconds > 0.0 ? budget.remaining() : 0.0;
      const PercolationSample sample =
          sample_vertex_percolation(o.d, o.p, s);
      SkeletonBuildOptions build;
      build.threads = o.threads;
      build.budget_seconds = left;
      const SkeletonGraph full = build_skeleton(sample, build);
      const ProjectionResult proj = project(sample, o.b);
      const SkeletonGraph sub = build_skeleton(proj.projected, build);

      std::uint64_t violations = 0;
      auto check_direction = [&](VertexId pu, VertexId pv) {
        for (VertexId w : fiber(o.d, o.b, pu)) {
          if (!sample.vertices.contains(w)) continue;
          bool found = false;
          for (VertexId x : fiber(o.d, o.b, pv)) {
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
        check_direction(e.u, e.v);
        check_direction(e.v, e.u);
      }
      total_violations += violations;

      ResultRow r;
      r.experiment = "renorm-check";
      r.d = dec(o.d);
      r.p = format_rational(o.p);
      r.b = dec(o.b);
      r.seed = dec(s);
      r.metric = "lift_violations";
      r.value = dec(violations);
      r.precision = kExact;
      r.walltime_s = timer.seconds();
      rows.push_back(r);
    }
  } catch (const BudgetError& e) {
    partial = true;
    ResultRow r;
    r.experiment = "renorm-check";
    r.metric = "partial";
    r.value = "1";
    r.precision = kExact;
    rows.push_back(r);
    std::cerr << e.what() << "; emitting partial results\n";
  }

  std::cout << "renorm check d=" << o.d << " b=" << o.b
            << " p=" << format_rational(o.p) << " seeds=[" << o.seed << ","
            << o.seed + o.seeds << "): " << total_violations
            << " lift violations (" << fixed6(timer.seconds()) << "s)\n";
  emit_rows(o, rows, false);
  if (partial) return 1;
  return total_violations == 0 ? 0 : 2;
}

int cmd_coupling(const CommandOptions& o) {
  require_d(o);
  if (o.k < 1 || o.m < 1) throw GuardError("--k and --m are required");
  Timer timer;
  const CouplingReport rep = coupling_distribution_test(
      o.d, o.k, o.m, o.p, o.trials, o.significance, o.seed, o.self_test);

  std::cout << "coupling d=" << rep.d << " k=" << rep.k << " m=" << rep.m
            << " p=" << format_rational(rep.p)
            << " q=" << format_rational(rep.q) << " trials=" << rep.trials
            << (rep.self_test ? " [self-test]" : "") << "\n";
  std::cout << "chi-square = " << sci(rep.statistic) << " on " << rep.df
            << " df, p-value = " << sci(rep.p_value) << " ("
            << rep.cells_used << " of " << rep.cells_input << " cells)\n";
  if (rep.conditional_trials > 0) {
    std::cout << "conditional on all vertices (" << rep.conditional_trials
              << " trials): edge frequencies";
    for (double f : rep.conditional_edge_freq) std::cout << ' ' << fixed6(f);
    double max_corr = 0.0;
    for (double c : rep.pairwise_edge_corr) {
      max_corr = std::max(max_corr, std::abs(c));
    }
    std::cout << "; max |pairwise corr| = " << fixed6(max_corr) << "\n";
  }
  std::cout << (rep.pass ? "PASS" : "FAIL") << " at significance "
            << sci(o.significance) << "\n";

  std::vector<ResultRow> rows;
  ResultRow base;
  base.experiment = "coupling";
  base.d = dec(o.d);
  base.p = format_rational(o.p);
  base.q = format_rational(rep.q);
  base.k = dec(o.k);
  base.m = dec(o.m);
  base.seed = dec(o.seed);
  base.trials = dec(o.trials);
  base.walltime_s = timer.seconds();
  auto add = [&](const std::string& metric, const std::string& value,
                 const char* prec) {
    ResultRow r = base;
    r.metric = metric;
    r.value = value;
    r.precision = prec;
    rows.push_back(r);
  };
  add("chi2_statistic", sci(rep.statistic), kPrecStat);
  add("chi2_df", sci(rep.df), kExact);
  add("chi2_p_value", sci(rep.p_value), kPrecStat);
  add("cells_used", dec(static_cast<std::uint64_t>(rep.cells_used)), kExact);
  add("conditional_trials", dec(rep.conditional_trials), kExact);
  for (std::size_t i = 0; i < rep.conditional_edge_freq.size(); ++i) {
    add("cond_edge_freq_" + dec(static_cast<std::uint64_t>(i)),
        sci(rep.conditional_edge_freq[i]), kPrecStat);
  }
  for (std::size_t i = 0; i < rep.pairwise_edge_corr.size(); ++i) {
    add("pairwise_corr_" + dec(static_cast<std::uint64_t>(i)),
        sci(rep.pairwise_edge_corr[i]), kPrecStat);
  }
  add("pass", rep.pass ? "1" : "0", kExact);
  emit_rows(o, rows, false);
  return rep.pass ? 0 : 3;
}

int cmd_diameter_path(const CommandOptions& o) {
  require_d(o);
  if (o.k < 1 || o.m < 1) throw GuardError("--k and --m are required");
  Timer timer;
  const std::uint64_t key = derive_key(o.seed, RngDomain::kHandle);
  std::size_t max_length = 0;
  for (std::uint64_t i = 0; i < o.pairs; ++i) {
    const SubcubeHandle h1 = random_handle(o.d, o.k, o.m, key, 2 * i);
    const SubcubeHandle h2 = random_handle(o.d, o.k, o.m, key, 2 * i + 1);
    const CubePath path = construct_gbox_path(h1, h2);
    max_length = std::max(max_length, path.length());
  }
  const std::size_t bound = static_cast<std::size_t>(4) *
                            static_cast<std::size_t>(o.k) *
                            static_cast<std::size_t>(o.d);
  std::cout << "diameter paths d=" << o.d << " k=" << o.k << " m=" << o.m
            << ": " << o.pairs << " pairs, max length " << max_length
            << " <= bound " << bound << " (" << fixed6(timer.seconds())
            << "s)\n";

  std::vector<ResultRow> rows;
  ResultRow base;
  base.experiment = "diameter-path";
  base.d = dec(o.d);
  base.k = dec(o.k);
  base.m = dec(o.m);
  base.seed = dec(o.seed);
  base.walltime_s = timer.seconds();
  auto add = [&](const std::string& metric, std::uint64_t value) {
    ResultRow r = base;
    r.metric = metric;
    r.value = dec(value);
    r.precision = kExact;
    rows.push_back(r);
  };
  add("paths", o.pairs);
  add("max_length", max_length);
  add("length_bound", bound);
  emit_rows(o, rows, false);
  return 0;
}

int cmd_isoperimetry(const CommandOptions& o) {
  require_d(o);
  Timer timer;
  const IsoperimetryReport rep = exhaustive_isoperimetry_check(o.d);
  if (rep.pass) {
    std::cout << "isoperimetry d=" << o.d << ": PASS over "
              << rep.subsets_checked << " subsets ("
              << fixed6(timer.seconds()) << "s)\n";
  } else {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "0x%x", rep.bad_set);
    std::cout << "isoperimetry d=" << o.d << ": FAIL (" << rep.violated
              << " bound, set " << buf << ", observed " << sci(rep.observed)
              << " < required " << sci(rep.required) << ")\n";
  }

  std::vector<ResultRow> rows;
  ResultRow base;
  base.experiment = "isoperimetry";
  base.d = dec(o.d);
  base.walltime_s = timer.seconds();
  ResultRow r = base;
  r.metric = "subsets_checked";
  r.value = dec(rep.subsets_checked);
  r.precision = kExact;
  rows.push_back(r);
  r.metric = "pass";
  r.value = rep.pass ? "1" : "0";
  rows.push_back(r);
  emit_rows(o, rows, false);
  return rep.pass ? 0 : 2;
}

int cmd_mixed_probe(const CommandOptions& o) {
  require_d(o);
  Timer timer;
  const MixedSample ms = sample_mixed(o.d, o.p, o.q, o.seed);
  const HighDegreeProbeReport rep = high_degree_set_probe(
      ms, o.alpha, static_cast<int>(std::min<std::uint64_t>(
                       o.trials, std::uint64_t{1} << 20)));
  std::cout << "mixed probe d=" << o.d << " p=" << format_rational(o.p)
            << " q=" << format_rational(o.q) << " alpha=" << sci(o.alpha)
            << ": ";
  if (!rep.admissible) {
    std::cout << "no admissible S (no vertex meets the degree filter)\n";
  } else {
    std::cout << rep.eligible_count << " eligible vertices; gamma estimate "
              << sci(rep.best_score) << " at |S| = " << rep.best_set.size()
              << ", |N(S)| = " << rep.best_neighborhood << " ("
              << rep.restarts_run << " restarts)\n";
  }

  std::vector<ResultRow> rows;
  ResultRow base;
  base.experiment = "mixed-probe";
  base.d = dec(o.d);
  base.p = format_rational(o.p);
  base.q = format_rational(o.q);
  base.alpha = sci(o.alpha);
  base.seed = dec(o.seed);
  base.trials = dec(o.trials);
  base.walltime_s = timer.seconds();
  auto add = [&](const std::string& metric, const std::string& value,
                 const char* prec) {
    ResultRow r = base;
    r.metric = metric;
    r.value = value;
    r.precision = prec;
    rows.push_back(r);
  };
  add("admissible", rep.admissible ? "1" : "0", kExact);
  add("eligible_count", dec(rep.eligible_count), kExact);
  if (rep.admissible) {
    add("gamma_estimate", sci(rep.best_score), kPrecStat);
    add("witness_size", dec(static_cast<std::uint64_t>(rep.best_set.size())),
        kExact);
    add("witness_neighborhood", dec(rep.best_neighborhood), kExact);
  }
  emit_rows(o, rows, false);
  return 0;
}

int cmd_degree_stats(const CommandOptions& o) {
  require_d(o);
  if (o.k < 1) throw GuardError("--k is required");
  Timer timer;
  const SkeletonGraph sk =
      build_for_command(o, o.p, o.seed, o.k, o.budget_seconds);
  const DegreeDichotomyReport rep = degree_dichotomy_stats(sk, o.alpha, o.k);
  const double fraction =
      rep.vertices == 0 ? 0.0
                        : static_cast<double>(rep.violations) /
                              static_cast<double>(rep.vertices);
  std::cout << "degree dichotomy d=" << o.d << " p=" << format_rational(o.p)
            << " k=" << o.k << " alpha=" << sci(o.alpha) << ": "
            << rep.violations << " of " << rep.vertices
            << " vertices fail both thresholds (" << sci(fraction)
            << "); thresholds " << sci(rep.threshold_class1) << " / "
            << sci(rep.threshold_classk) << " (" << fixed6(timer.seconds())
            << "s)\n";

  std::vector<ResultRow> rows;
  ResultRow base;
  base.experiment = "degree-stats";
  base.d = dec(o.d);
  base.p = format_rational(o.p);
  base.k = dec(o.k);
  base.alpha = sci(o.alpha);
  base.seed = dec(o.seed);
  base.walltime_s = timer.seconds();
  auto add = [&](const std::string& metric, const std::string& value,
                 const char* prec) {
    ResultRow r = base;
    r.metric = metric;
    r.value = value;
    r.precision = prec;
    rows.push_back(r);
  };
  add("vertices", dec(rep.vertices), kExact);
  add("dichotomy_violations", dec(rep.violations), kExact);
  add("violation_fraction", sci(fraction), kPrecStat);
  emit_rows(o, rows, false);
  return 0;
}

int run_command(const std::string& name, const CommandOptions& o) {
  try {
    if (name == "sample") return cmd_sample(o);
    if (name == "skeleton") return cmd_skeleton(o);
    if (name == "cheeger") return cmd_cheeger(o);
    if (name == "expansion-scan") return cmd_expansion_scan(o);
    if (name == "renorm-check") return cmd_renorm_check(o);
    if (name == "coupling") return cmd_coupling(o);
    if (name == "diameter-path") return cmd_diameter_path(o);
    if (name == "isoperimetry") return cmd_isoperimetry(o);
    if (name == "mixed-probe") return cmd_mixed_probe(o);
    if (name == "degree-stats") return cmd_degree_stats(o);
    throw GuardError("unknown subcommand: " + name);
  } catch (const InvariantError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "invariant: unexpected failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cubelab
