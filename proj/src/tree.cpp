#include "hhc/tree.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "hhc/errors.hpp"

namespace hhc::tree {

namespace {

// Leaf count per node id, bottom-up (internal nodes are created children
// before parents, so a single pass over creation order suffices after
// validate(); for unvalidated trees we recompute iteratively).
std::vector<int> leaf_counts(const Dendrogram& t) {
  std::vector<int> counts(t.num_nodes(), 0);
  for (int leaf = 0; leaf < t.n_leaves; ++leaf) counts[leaf] = 1;
  // children always have smaller creation rank than their parent when built
  // by decode/from_newick; a fixed-point sweep covers arbitrary valid input
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < t.internal.size(); ++k) {
      const auto& nd = t.internal[k];
      const int id = t.n_leaves + static_cast<int>(k);
      const int want = counts[nd.left] + counts[nd.right];
      if (counts[nd.left] > 0 && counts[nd.right] > 0 && counts[id] != want) {
        counts[id] = want;
        changed = true;
      }
    }
  }
  return counts;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void validate(const Dendrogram& t) {
  if (t.n_leaves < 1) throw std::invalid_argument("dendrogram: no leaves");
  if (static_cast<int>(t.internal.size()) != t.n_leaves - 1) {
    throw std::invalid_argument("dendrogram: internal node count must be n_leaves - 1");
  }
  const int total = t.num_nodes();
  if (t.root < 0 || t.root >= total) throw std::invalid_argument("dendrogram: bad root id");
  std::vector<int> parent(total, -1);
  for (std::size_t k = 0; k < t.internal.size(); ++k) {
    const int id = t.n_leaves + static_cast<int>(k);
    for (int child : {t.internal[k].left, t.internal[k].right}) {
      if (child < 0 || child >= total || child == id) {
        throw std::invalid_argument("dendrogram: child id out of range");
      }
      if (parent[child] != -1) throw std::invalid_argument("dendrogram: node has two parents");
      parent[child] = id;
    }
  }
  if (parent[t.root] != -1) throw std::invalid_argument("dendrogram: root has a parent");
  for (int id = 0; id < total; ++id) {
    if (id != t.root && parent[id] == -1) {
      throw std::invalid_argument("dendrogram: disconnected node " + std::to_string(id));
    }
  }
  // acyclicity + leaf-count consistency
  const std::vector<int> counts = leaf_counts(t);
  if (counts[t.root] != t.n_leaves) {
    throw std::invalid_argument("dendrogram: leaf counts inconsistent (cycle or bad links)");
  }
}

Dendrogram decode(std::span<const PoincarePoint> embeddings) {
  const int n = static_cast<int>(embeddings.size());
  if (n < 2) throw std::invalid_argument("decode: need at least 2 points");

  struct PairDepth {
    int i, j;
    double depth;
  };
  std::vector<PairDepth> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      pairs.push_back({i, j, geometry::lca_depth(embeddings[i], embeddings[j])});
    }
  }
  // deepest merges first; exact ties resolved by pair order for determinism
  std::sort(pairs.begin(), pairs.end(), [](const PairDepth& a, const PairDepth& b) {
    if (a.depth != b.depth) return a.depth > b.depth;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  Dendrogram t;
  t.n_leaves = n;
  t.internal.reserve(n - 1);
  UnionFind uf(n);
  std::vector<int> component_node(n);  // root representative -> current node id
  std::iota(component_node.begin(), component_node.end(), 0);

  int merges = 0;
  for (const PairDepth& p : pairs) {
    const int ri = uf.find(p.i);
    const int rj = uf.find(p.j);
    if (ri == rj) continue;
    const int id = n + merges;
    t.internal.push_back({component_node[ri], component_node[rj], merges});
    uf.unite(ri, rj);
    component_node[uf.find(p.i)] = id;
    if (++merges == n - 1) break;
  }
  t.root = n + merges - 1;
  return t;
}

double dasgupta_cost(const Dendrogram& t, const SimilarityGraph& graph) {
  if (t.n_leaves != graph.n) {
    throw std::invalid_argument("dasgupta_cost: tree/graph size mismatch");
  }
  validate(t);
  // Pairs resolve at their lowest common ancestor: for each internal node,
  // cross pairs between its two child subtrees, each weighted by the node's
  // leaf count. Leaf lists are moved upward so every pair is touched once.
  std::vector<std::vector<int>> leaves(t.num_nodes());
  for (int leaf = 0; leaf < t.n_leaves; ++leaf) leaves[leaf] = {leaf};
  double cost = 0.0;
  for (std::size_t k = 0; k < t.internal.size(); ++k) {
    const auto& nd = t.internal[k];
    const int id = t.n_leaves + static_cast<int>(k);
    auto& l = leaves[nd.left];
    auto& r = leaves[nd.right];
    const double size = static_cast<double>(l.size() + r.size());
    double cross_sum = 0.0;
    for (int a : l) {
      for (int b : r) cross_sum += graph.weight(a, b);
    }
    cost += size * cross_sum;
    leaves[id] = std::move(l);
    leaves[id].insert(leaves[id].end(), r.begin(), r.end());
    r.clear();
    r.shrink_to_fit();
  }
  return cost;
}

double dendrogram_purity(const Dendrogram& t, std::span<const int> labels) {
  if (static_cast<int>(labels.size()) != t.n_leaves) {
    throw std::invalid_argument("dendrogram_purity: labels/leaves size mismatch");
  }
  validate(t);
  std::unordered_map<int, int> class_ids;
  for (int l : labels) class_ids.try_emplace(l, static_cast<int>(class_ids.size()));
  const int n_classes = static_cast<int>(class_ids.size());

  std::vector<std::uint64_t> class_sizes(n_classes, 0);
  for (int l : labels) ++class_sizes[class_ids.at(l)];
  std::uint64_t same_class_pairs = 0;  // unordered; purity is pair-symmetric
  for (std::uint64_t s : class_sizes) same_class_pairs += s * (s - 1) / 2;
  if (same_class_pairs == 0) {
    throw std::invalid_argument("dendrogram_purity: no class has two members");
  }

  // Per-node class histograms, merged upward. For each internal node, the
  // same-class pairs resolving there contribute (class count under node) /
  // (leaf count under node) each.
  std::vector<std::vector<int>> hist(t.num_nodes());
  std::vector<int> sizes(t.num_nodes(), 0);
  for (int leaf = 0; leaf < t.n_leaves; ++leaf) {
    hist[leaf].assign(n_classes, 0);
    hist[leaf][class_ids.at(labels[leaf])] = 1;
    sizes[leaf] = 1;
  }
  double total = 0.0;
  for (std::size_t k = 0; k < t.internal.size(); ++k) {
    const auto& nd = t.internal[k];
    const int id = t.n_leaves + static_cast<int>(k);
    auto& hl = hist[nd.left];
    auto& hr = hist[nd.right];
    const int size = sizes[nd.left] + sizes[nd.right];
    for (int c = 0; c < n_classes; ++c) {
      if (hl[c] == 0 || hr[c] == 0) continue;
      const double count_here = hl[c] + hr[c];
      total += static_cast<double>(hl[c]) * hr[c] * (count_here / size);
    }
    sizes[id] = size;
    hist[id] = std::move(hl);
    for (int c = 0; c < n_classes; ++c) hist[id][c] += hr[c];
    hr.clear();
    hr.shrink_to_fit();
  }
  return total / static_cast<double>(same_class_pairs);
}

std::string to_newick(const Dendrogram& t) {
  validate(t);
  std::string out;
  // explicit stack; deep caterpillars would overflow call-stack recursion
  struct Frame {
    int id;
    int stage;  // 0: open, 1: between children, 2: close
  };
  std::vector<Frame> stack{{t.root, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (t.is_leaf(f.id)) {
      out += std::to_string(f.id);
      stack.pop_back();
      continue;
    }
    const auto& nd = t.node(f.id);
    if (f.stage == 0) {
      out += '(';
      f.stage = 1;
      stack.push_back({nd.left, 0});
    } else if (f.stage == 1) {
      out += ',';
      f.stage = 2;
      stack.push_back({nd.right, 0});
    } else {
      out += ')';
      stack.pop_back();
    }
  }
  out += ';';
  return out;
}

std::string to_dot(const Dendrogram& t) {
  validate(t);
  std::string out = "digraph dendrogram {\n";
  for (int leaf = 0; leaf < t.n_leaves; ++leaf) {
    out += "  n" + std::to_string(leaf) + " [shape=box, label=\"" +
           std::to_string(leaf) + "\"];\n";
  }
  for (std::size_t k = 0; k < t.internal.size(); ++k) {
    const int id = t.n_leaves + static_cast<int>(k);
    out += "  n" + std::to_string(id) + " [label=\"m" +
           std::to_string(t.internal[k].merge_rank) + "\"];\n";
  }
  for (std::size_t k = 0; k < t.internal.size(); ++k) {
    const int id = t.n_leaves + static_cast<int>(k);
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(t.internal[k].left) + ";\n";
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(t.internal[k].right) + ";\n";
  }
  out += "}\n";
  return out;
}

namespace {

// Minimal recursive-descent reader for the binary-tree subset of Newick:
//   tree := node ';'   node := LEAF | '(' node ',' node ')'
class NewickReader {
 public:
  explicit NewickReader(std::string_view text) : text_(text) {}

  Dendrogram read() {
    pos_ = 0;
    skip_ws();
    ParsedNode root = node();
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ';') {
      throw ParseError("expected ';'", pos_);
    }
    ++pos_;
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing characters after ';'", pos_);

    const int n = static_cast<int>(leaves_seen_.size());
    if (n < 2) throw ParseError("tree must have at least 2 leaves", 0);
    std::vector<bool> seen(n, false);
    for (auto [leaf, at] : leaves_seen_) {
      if (leaf >= n) {
        throw ParseError("leaf id " + std::to_string(leaf) + " out of range for " +
                             std::to_string(n) + " leaves",
                         at);
      }
      if (seen[leaf]) throw ParseError("duplicate leaf " + std::to_string(leaf), at);
      seen[leaf] = true;
    }

    Dendrogram t;
    t.n_leaves = n;
    t.internal.reserve(pending_.size());
    // pending_ holds (left, right) in post-order; slots < 0 reference the
    // ~index of an earlier internal node
    for (std::size_t k = 0; k < pending_.size(); ++k) {
      const auto [l, r] = pending_[k];
      t.internal.push_back({l < 0 ? n + static_cast<int>(~l) : l,
                            r < 0 ? n + static_cast<int>(~r) : r,
                            static_cast<int>(k)});
    }
    t.root = root.leaf >= 0 ? root.leaf : n + static_cast<int>(~root.leaf);
    validate(t);
    return t;
  }

 private:
  struct ParsedNode {
    long leaf;  // >= 0: leaf id; < 0: ~index into pending_
  };

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  ParsedNode node() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (text_[pos_] == '(') {
      const std::size_t open_at = pos_;
      ++pos_;
      ParsedNode left = node();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ',') {
        throw ParseError("expected ',' inside node", pos_);
      }
      ++pos_;
      ParsedNode right = node();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        throw ParseError("non-binary node", pos_);
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        throw ParseError("unbalanced parenthesis opened", open_at);
      }
      ++pos_;
      pending_.push_back({static_cast<int>(left.leaf), static_cast<int>(right.leaf)});
      return {~static_cast<long>(pending_.size() - 1)};
    }
    if (!std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected leaf index or '('", pos_);
    }
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000'000L) throw ParseError("leaf index too large", start);
      ++pos_;
    }
    leaves_seen_.push_back({value, start});
    return {value};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::pair<int, int>> pending_;
  std::vector<std::pair<long, std::size_t>> leaves_seen_;
};

}  // namespace

Dendrogram from_newick(std::string_view text) { return NewickReader(text).read(); }

bool structurally_equal(const Dendrogram& a, const Dendrogram& b) {
  if (a.n_leaves != b.n_leaves) return false;
  std::vector<std::pair<int, int>> stack{{a.root, b.root}};
  while (!stack.empty()) {
    auto [ia, ib] = stack.back();
    stack.pop_back();
    const bool la = a.is_leaf(ia);
    const bool lb = b.is_leaf(ib);
    if (la != lb) return false;
    if (la) {
      if (ia != ib) return false;
      continue;
    }
    stack.push_back({a.node(ia).left, b.node(ib).left});
    stack.push_back({a.node(ia).right, b.node(ib).right});
  }
  return true;
}

}  // namespace hhc::tree
