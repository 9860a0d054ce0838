#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hhc/similarity.hpp"
#include "hhc/tree.hpp"

namespace hhc::oracle {

// Number of rooted binary leaf-labeled trees over n leaves, (2n-3)!!.
std::uint64_t tree_count(int n);

// Enumerates every rooted binary tree over graph.n leaves and returns an
// argmin of the Dasgupta cost together with its value. Each tree is
// generated exactly once by inserting leaf k above every node of the tree
// over leaves 0..k-1. Refuses n outside [2, 8].
std::pair<Dendrogram, double> best_tree_exhaustive(const SimilarityGraph& graph);

// Central finite differences, (f(x + h e) - f(x - h e)) / (2h) per coordinate.
std::vector<double> finite_diff(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double h);

}  // namespace hhc::oracle
