// Python bindings for the cubelab core.
//
// Probabilities and exact results cross the boundary as "num/den" strings,
// so nothing is lost to floating point; callers can hand them to
// fractions.Fraction directly.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "cubelab/adjacency.hpp"
#include "cubelab/commands.hpp"
#include "cubelab/cube_family.hpp"
#include "cubelab/errors.hpp"
#include "cubelab/expansion.hpp"
#include "cubelab/hypercube.hpp"
#include "cubelab/rng.hpp"
#include "cubelab/sampling.hpp"
#include "cubelab/skeleton.hpp"

namespace py = pybind11;
using namespace cubelab;

namespace {

SkeletonGraph skeleton_of(int d, const std::string& p, std::uint64_t seed,
                          int k_max) {
  const PercolationSample sample =
      sample_vertex_percolation(d, parse_rational(p), seed);
  SkeletonBuildOptions opts;
  opts.k_max = k_max;
  return build_skeleton(sample, opts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact skeletons, expansion, and cube families for random "
            "0/1 polytopes";

  py::register_exception<GuardError>(m, "GuardError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError",
                                         PyExc_RuntimeError);

  m.def(
      "sample_vertices",
      [](int d, const std::string& p, std::uint64_t seed) {
        return sample_vertex_percolation(d, parse_rational(p), seed)
            .vertices.to_vector();
      },
      py::arg("d"), py::arg("p"), py::arg("seed"),
      "Retained vertex ids of a percolation sample, ascending.");

  m.def(
      "skeleton_edges",
      [](int d, const std::string& p, std::uint64_t seed, int k_max) {
        std::vector<std::tuple<int, VertexId, VertexId>> out;
        for (const SkeletonEdge& e : skeleton_of(d, p, seed, k_max).edges) {
          out.emplace_back(e.k, e.u, e.v);
        }
        return out;
      },
      py::arg("d"), py::arg("p"), py::arg("seed"), py::arg("k_max") = -1,
      "Polytope skeleton edges as (k, u, v), ascending.");

  m.def(
      "cheeger_exact",
      [](int d, const std::string& p, std::uint64_t seed) {
        const SkeletonGraph sk = skeleton_of(d, p, seed, -1);
        const LabeledGraph lg = sk.to_labeled_graph();
        const CutEvaluation cut = cheeger_exact(lg.graph, kHardExactCutoff);
        std::vector<VertexId> side;
        for (int i : cut.side) {
          side.push_back(lg.labels[static_cast<std::size_t>(i)]);
        }
        py::dict out;
        out["ratio"] = format_rational(cut.ratio);
        out["boundary"] = cut.boundary;
        out["side"] = side;
        out["disconnected"] = cut.disconnected;
        return out;
      },
      py::arg("d"), py::arg("p"), py::arg("seed"),
      "Exact edge-expansion of the sample's skeleton, with a witness cut.");

  m.def(
      "cheeger_spectral_lower",
      [](int d, const std::string& p, std::uint64_t seed) {
        const LabeledGraph lg =
            skeleton_of(d, p, seed, -1).to_labeled_graph();
        return cheeger_spectral_lower(lg.graph).lower;
      },
      py::arg("d"), py::arg("p"), py::arg("seed"),
      "lambda_2 / 2 certificate from the graph Laplacian.");

  m.def(
      "cheeger_sweep_upper",
      [](int d, const std::string& p, std::uint64_t seed) {
        const LabeledGraph lg =
            skeleton_of(d, p, seed, -1).to_labeled_graph();
        return format_rational(cheeger_sweep_upper(lg.graph).ratio);
      },
      py::arg("d"), py::arg("p"), py::arg("seed"),
      "Fiedler-sweep upper bound, exact ratio of the returned cut.");

  m.def(
      "exact_edge_probability",
      [](const std::string& p, int k) {
        return format_rational(exact_edge_probability_q(parse_rational(p), k));
      },
      py::arg("p"), py::arg("k"),
      "q(p, k): probability that a retained distance-k pair is an edge.");

  m.def("harper_edge_bound", &harper_edge_bound, py::arg("d"), py::arg("s"),
        "Lower bound s (d - log2 s) on the edge boundary of s vertices.");

  m.def(
      "isoperimetry_ok",
      [](int d) { return exhaustive_isoperimetry_check(d).pass; },
      py::arg("d"),
      "Exhaustively verify the cube's edge and vertex expansion bounds.");

  m.def(
      "family_size",
      [](int d, int k, int m) { return family_size(d, k, m).get_str(); },
      py::arg("d"), py::arg("k"), py::arg("m"),
      "Number of k-uniform m-block subcubes in the partition family.");

  m.def(
      "direction_set_count",
      [](int d, int k, int m) {
        return direction_set_count(d, k, m).get_str();
      },
      py::arg("d"), py::arg("k"), py::arg("m"));

  m.def(
      "gbox_path_length",
      [](int d, int k, int m, std::uint64_t seed, std::uint64_t index) {
        const std::uint64_t key = derive_key(seed, RngDomain::kHandle);
        const SubcubeHandle a = random_handle(d, k, m, key, 2 * index);
        const SubcubeHandle b = random_handle(d, k, m, key, 2 * index + 1);
        return construct_gbox_path(a, b).length();
      },
      py::arg("d"), py::arg("k"), py::arg("m"), py::arg("seed"),
      py::arg("index"),
      "Length of a validated box-graph path between two random handles.");

  m.def(
      "coupling_p_value",
      [](int d, int k, int m, const std::string& p, std::uint64_t trials,
         std::uint64_t seed, bool self_test) {
        return coupling_distribution_test(d, k, m, parse_rational(p), trials,
                                          0.01, seed, self_test)
            .p_value;
      },
      py::arg("d"), py::arg("k"), py::arg("m"), py::arg("p"),
      py::arg("trials"), py::arg("seed"), py::arg("self_test") = false,
      "Chi-square p-value of the cube-configuration law against the exact "
      "product reference.");

  m.def(
      "local_adjacent",
      [](int d, const std::string& p, std::uint64_t seed, VertexId u,
         VertexId v) {
        const VertexPercolation oracle(d, parse_rational(p), seed);
        return local_adjacency(oracle, u, v);
      },
      py::arg("d"), py::arg("p"), py::arg("seed"), py::arg("u"), py::arg("v"),
      "Skeleton adjacency of two retained vertices, decided in their "
      "spanned subcube.");

  m.def(
      "run_command",
      [](const std::string& name, int d, const std::string& p,
         std::uint64_t seed, const std::string& out) {
        CommandOptions o;
        o.d = d;
        o.p = parse_rational(p);
        o.seed = seed;
        o.out = out;
        return run_command(name, o);
      },
      py::arg("name"), py::arg("d"), py::arg("p") = std::string("1"),
      py::arg("seed") = 0, py::arg("out") = std::string(),
      "Minimal front-end to the CLI commands (default flags).");
}
