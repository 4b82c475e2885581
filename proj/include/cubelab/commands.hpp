#pragma once
// Shared implementations of the CLI subcommands.
//
// Each command reads a flat option struct (filled by the CLI front-end or by
// tests), prints a human-readable summary to stdout, optionally writes
// result rows (see io.hpp), and returns a process exit code:
//   0  success
//   1  guard violation (bad input, budget exhausted)
//   2  broken invariant — indicates a bug or a falsified exact cross-check
//   3  a statistical acceptance test failed
// Guard/invariant exceptions are translated by run_command.

#include <cstdint>
#include <string>
#include <vector>

#include "cubelab/rational.hpp"

namespace cubelab {

struct CommandOptions {
  int d = -1;
  Rational p = Rational(1);
  Rational q = Rational(1);
  bool q_set = false;  // sample: mixed model iff --q was given
  int k = -1;
  int m = -1;
  int b = 0;
  double alpha = 0.5;
  Rational epsilon = Rational(1, 4);
  std::uint64_t seed = 0;
  std::uint64_t seeds = 1;    // grid commands: consecutive seeds from `seed`
  std::uint64_t trials = 1000;
  std::uint64_t pairs = 100;  // diameter-path
  double significance = 0.01;
  std::vector<int> d_grid;            // expansion-scan
  std::vector<std::string> p_grid;    // expansion-scan, rationals "a/b"
  std::string out;                    // file (or cache directory: skeleton)
  std::string format = "csv";
  std::string method = "all";  // cheeger: exact|spectral|sweep|all
  int threads = 1;
  double budget_seconds = 0.0;
  bool verify_cache = false;
  bool self_test = false;  // coupling: draw from the reference law itself
};

int cmd_sample(const CommandOptions& o);
int cmd_skeleton(const CommandOptions& o);
int cmd_cheeger(const CommandOptions& o);
int cmd_expansion_scan(const CommandOptions& o);
int cmd_renorm_check(const CommandOptions& o);
int cmd_coupling(const CommandOptions& o);
int cmd_diameter_path(const CommandOptions& o);
int cmd_isoperimetry(const CommandOptions& o);
int cmd_mixed_probe(const CommandOptions& o);
int cmd_degree_stats(const CommandOptions& o);

// Dispatch by subcommand name with exception -> exit-code translation.
int run_command(const std::string& name, const CommandOptions& o);

}  // namespace cubelab
