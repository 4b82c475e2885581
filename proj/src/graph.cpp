#include "cubelab/graph.hpp"

#include <algorithm>
#include <string>

namespace cubelab {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw GuardError("graph size must be nonnegative");
  adj_.resize(n);
}

void Graph::add_edge(int a, int b) {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) {
    throw GuardError("edge endpoint out of range");
  }
  if (a == b) throw GuardError("self-loops are not allowed");
  if (has_edge(a, b)) return;
  adj_[a].insert(std::lower_bound(adj_[a].begin(), adj_[a].end(), b), b);
  adj_[b].insert(std::lower_bound(adj_[b].begin(), adj_[b].end(), a), a);
  ++edge_count_;
}

bool Graph::has_edge(int a, int b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) return false;
  const auto& row = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
  const int probe = adj_[a].size() <= adj_[b].size() ? b : a;
  return std::binary_search(row.begin(), row.end(), probe);
}

std::uint64_t Graph::edge_boundary(const std::vector<char>& in_set) const {
  if (static_cast<int>(in_set.size()) != n_) {
    throw GuardError("indicator size does not match graph size");
  }
  std::uint64_t cut = 0;
  for (int v = 0; v < n_; ++v) {
    if (!in_set[v]) continue;
    for (int w : adj_[v]) {
      if (!in_set[w]) ++cut;
    }
  }
  return cut;
}

std::uint64_t Graph::outside_neighborhood(
    const std::vector<char>& in_set) const {
  if (static_cast<int>(in_set.size()) != n_) {
    throw GuardError("indicator size does not match graph size");
  }
  std::vector<char> seen(n_, 0);
  std::uint64_t size = 0;
  for (int v = 0; v < n_; ++v) {
    if (!in_set[v]) continue;
    for (int w : adj_[v]) {
      if (!in_set[w] && !seen[w]) {
        seen[w] = 1;
        ++size;
      }
    }
  }
  return size;
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<int> label(n_, -1);
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  for (int start = 0; start < n_; ++start) {
    if (label[start] != -1) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    stack.push_back(start);
    label[start] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comps[id].push_back(v);
      for (int w : adj_[v]) {
        if (label[w] == -1) {
          label[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(comps[id].begin(), comps[id].end());
  }
  return comps;
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
  if (n_ > 64) {
    throw GuardError("adjacency masks need at most 64 vertices, got " +
                     std::to_string(n_));
  }
  std::vector<std::uint64_t> masks(n_, 0);
  for (int v = 0; v < n_; ++v) {
    for (int w : adj_[v]) masks[v] |= std::uint64_t{1} << w;
  }
  return masks;
}

std::vector<double> Graph::laplacian() const {
  std::vector<double> L(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int v = 0; v < n_; ++v) {
    L[static_cast<std::size_t>(v) * n_ + v] = static_cast<double>(degree(v));
    for (int w : adj_[v]) L[static_cast<std::size_t>(v) * n_ + w] = -1.0;
  }
  return L;
}

}  // namespace cubelab
