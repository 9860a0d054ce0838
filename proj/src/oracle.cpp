#include "hhc/oracle.hpp"

#include <stdexcept>

namespace hhc::oracle {

std::uint64_t tree_count(int n) {
  std::uint64_t count = 1;
  for (int k = 2; k < n; ++k) count *= 2 * static_cast<std::uint64_t>(k) - 1;
  return count;
}

namespace {

// Builds the tree selected by one choice vector: choices[k-2] says which of
// the 2k-1 nodes of the current k-leaf tree the next leaf is inserted above.
// Node numbering for choices: leaves first (0..k-1), then internal nodes in
// creation order.
Dendrogram build_from_choices(int n, std::span<const int> choices) {
  Dendrogram t;
  t.n_leaves = n;
  t.internal.reserve(n - 1);
  std::vector<int> parent(2 * n - 1, -1);
  // cherry over leaves 0 and 1
  t.internal.push_back({0, 1, 0});
  int root = n;
  parent[0] = parent[1] = n;
  for (int k = 2; k < n; ++k) {
    const int choice = choices[k - 2];
    const int target = choice < k ? choice : n + (choice - k);
    const int fresh = n + k - 1;
    t.internal.push_back({target, k, k - 1});
    const int old_parent = parent[target];
    if (old_parent == -1) {
      root = fresh;
    } else {
      auto& p = t.internal[old_parent - n];
      (p.left == target ? p.left : p.right) = fresh;
    }
    parent[target] = fresh;
    parent[k] = fresh;
    parent[fresh] = old_parent;
  }
  t.root = root;
  return t;
}

}  // namespace

std::pair<Dendrogram, double> best_tree_exhaustive(const SimilarityGraph& graph) {
  const int n = graph.n;
  if (n < 2) throw std::invalid_argument("best_tree_exhaustive: need n >= 2");
  if (n > 8) {
    throw std::invalid_argument(
        "best_tree_exhaustive: refused for n > 8 (double-factorial blowup)");
  }

  std::vector<int> choices(std::max(n - 2, 0), 0);
  Dendrogram best;
  double best_cost = 0.0;
  bool first = true;
  // mixed-radix odometer over insertion positions; digit k-2 has base 2k-1
  while (true) {
    Dendrogram t = build_from_choices(n, choices);
    const double cost = tree::dasgupta_cost(t, graph);
    if (first || cost < best_cost) {
      best = std::move(t);
      best_cost = cost;
      first = false;
    }
    int digit = static_cast<int>(choices.size()) - 1;
    while (digit >= 0) {
      if (++choices[digit] < 2 * (digit + 2) - 1) break;
      choices[digit] = 0;
      --digit;
    }
    if (digit < 0) break;
  }
  return {best, best_cost};
}

std::vector<double> finite_diff(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double h) {
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    const double saved = point[c];
    point[c] = saved + h;
    const double up = f(point);
    point[c] = saved - h;
    const double down = f(point);
    point[c] = saved;
    grad[c] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace hhc::oracle
