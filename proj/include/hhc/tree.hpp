#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhc/geometry.hpp"
#include "hhc/similarity.hpp"

namespace hhc {

// Rooted binary tree over n_leaves data points. Leaves carry ids 0..n-1;
// internal node k (in creation order) carries id n_leaves + k. A tree over
// n leaves always has exactly n-1 internal nodes.
struct Dendrogram {
  struct InternalNode {
    int left;
    int right;
    int merge_rank;  // creation order, 0-based
  };

  int n_leaves = 0;
  std::vector<InternalNode> internal;
  int root = -1;

  bool is_leaf(int id) const { return id < n_leaves; }
  int num_nodes() const { return n_leaves + static_cast<int>(internal.size()); }
  const InternalNode& node(int id) const { return internal[id - n_leaves]; }
};

namespace tree {

// Fails with std::invalid_argument if the structure breaks a dendrogram
// invariant (wrong node counts, cycles, missing or duplicated leaves).
void validate(const Dendrogram& t);

// Agglomerative readout of an embedding configuration: all pairs sorted by
// merge depth (deepest first, ties by index order), merged through a
// union-find. Throws std::invalid_argument for fewer than 2 points.
Dendrogram decode(std::span<const PoincarePoint> embeddings);

// Sum over leaf pairs of similarity times the leaf count under the pair's
// lowest common ancestor. Lower is better.
double dasgupta_cost(const Dendrogram& t, const SimilarityGraph& graph);

// Mean over ordered same-class leaf pairs of the class purity of the
// subtree rooted at the pair's lowest common ancestor. 1 when some frontier
// of the tree exactly separates the classes.
// Throws std::invalid_argument if no class has two members.
double dendrogram_purity(const Dendrogram& t, std::span<const int> labels);

// Leaf ids as names, no branch lengths, semicolon-terminated.
std::string to_newick(const Dendrogram& t);

// Directed graph with internal nodes labeled by merge rank.
std::string to_dot(const Dendrogram& t);

// Inverse of to_newick. Throws hhc::ParseError (with byte position) on
// malformed input: unbalanced parentheses, non-binary nodes, duplicate or
// out-of-range leaves, trailing garbage.
Dendrogram from_newick(std::string_view text);

// Ordered structural equality (same shape, same leaf placement).
bool structurally_equal(const Dendrogram& a, const Dendrogram& b);

}  // namespace tree
}  // namespace hhc
