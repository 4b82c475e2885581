// cubelab: a desk-scale laboratory for random 0/1 polytopes.
//
// Subcommands: sample, skeleton, cheeger, expansion-scan, renorm-check,
// coupling, diameter-path, isoperimetry, mixed-probe, degree-stats.
// Exit codes: 0 success, 1 guard violation, 2 broken invariant,
// 3 statistical test failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubelab/commands.hpp"
#include "cubelab/errors.hpp"
#include "cubelab/rational.hpp"

namespace {

struct RawOptions {
  cubelab::CommandOptions opts;
  std::string p = "1";
  std::string q;
  std::string epsilon = "1/4";
};

// Common flags shared by every subcommand; probabilities arrive as exact
// rational strings ("a/b" or "a").
void add_common(CLI::App* cmd, RawOptions& raw) {
  cubelab::CommandOptions& o = raw.opts;
  cmd->add_option("--d", o.d, "dimension of the ambient cube");
  cmd->add_option("--p", raw.p, "vertex retention probability, rational a/b");
  cmd->add_option("--q", raw.q, "edge retention probability, rational a/b");
  cmd->add_option("--k", o.k, "Hamming distance class / block size");
  cmd->add_option("--m", o.m, "number of direction blocks");
  cmd->add_option("--b", o.b, "projected-out coordinate count");
  cmd->add_option("--alpha", o.alpha, "degree-filter fraction");
  cmd->add_option("--epsilon", raw.epsilon, "density window, rational a/b");
  cmd->add_option("--seed", o.seed, "base RNG seed");
  cmd->add_option("--seeds", o.seeds, "number of consecutive seeds");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials / restarts");
  cmd->add_option("--pairs", o.pairs, "number of handle pairs");
  cmd->add_option("--significance", o.significance,
                  "chi-square rejection level");
  cmd->add_option("--method", o.method, "cheeger: exact|spectral|sweep|all");
  cmd->add_option("--out", o.out, "output file (or cache directory)");
  cmd->add_option("--format", o.format, "result format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--budget-seconds", o.budget_seconds,
                  "wall-clock budget; partial results are flagged");
  cmd->add_flag("--verify-cache", o.verify_cache,
                "recompute a random 1% of pairs against the cache");
  cmd->add_flag("--self-test", o.self_test,
                "coupling: sample the reference law itself");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubelab: exact skeletons, expansion, and cube families"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file");

  const std::vector<std::string> names = {
      "sample",       "skeleton",      "cheeger",  "expansion-scan",
      "renorm-check", "coupling",      "diameter-path", "isoperimetry",
      "mixed-probe",  "degree-stats"};
  std::vector<RawOptions> raws(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(names[i]);
    add_common(cmd, raws[i]);
    if (names[i] == "expansion-scan") {
      cmd->add_option("--d-grid", raws[i].opts.d_grid,
                      "dimension grid (repeatable)");
      cmd->add_option("--p-grid", raws[i].opts.p_grid,
                      "probability grid, rationals (repeatable)");
    }
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!app.got_subcommand(names[i])) continue;
    RawOptions& raw = raws[i];
    try {
      raw.opts.p = cubelab::parse_rational(raw.p);
      if (!raw.q.empty()) {
        raw.opts.q = cubelab::parse_rational(raw.q);
        raw.opts.q_set = true;
      }
      raw.opts.epsilon = cubelab::parse_rational(raw.epsilon);
    } catch (const cubelab::GuardError& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
    return cubelab::run_command(names[i], raw.opts);
  }
  return 1;
}
