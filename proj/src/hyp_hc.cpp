#include "hhc/hyp_hc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace hhc::hyp_hc {

namespace {

struct Softmax3 {
  std::array<double, 3> p;
  double value;  // p . w
};

Softmax3 depth_softmax(const std::array<double, 3>& depths,
                       const std::array<double, 3>& weights, double tau) {
  const double m = std::max({depths[0], depths[1], depths[2]});
  std::array<double, 3> e;
  double z = 0.0;
  for (int t = 0; t < 3; ++t) {
    e[t] = std::exp((depths[t] - m) / tau);
    z += e[t];
  }
  Softmax3 out;
  out.value = 0.0;
  for (int t = 0; t < 3; ++t) {
    out.p[t] = e[t] / z;
    out.value += out.p[t] * weights[t];
  }
  return out;
}

// Per-pair cache shared by all triplets touching the pair. Keeps the loss
// and its backward pass linear in the number of triplets.
struct PairKey {
  int i, j;
  bool operator==(const PairKey&) const = default;
};
struct PairKeyHash {
  std::size_t operator()(const PairKey& p) const {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(p.i) << 32) | static_cast<std::uint32_t>(p.j));
  }
};

class PairCache {
 public:
  PairCache(std::span<const PoincarePoint> embeddings, bool with_gradients)
      : embeddings_(embeddings), with_gradients_(with_gradients) {}

  int index_of(int i, int j) {
    auto [it, inserted] = index_.try_emplace({i, j}, static_cast<int>(depths_.size()));
    if (inserted) {
      depths_.push_back(geometry::lca_depth(embeddings_[i], embeddings_[j]));
      if (with_gradients_) {
        grads_.push_back(geometry::lca_depth_gradient(embeddings_[i], embeddings_[j]));
        coeffs_.push_back(0.0);
        firsts_.push_back(i);
        seconds_.push_back(j);
      }
    }
    return it->second;
  }

  double depth(int idx) const { return depths_[idx]; }
  void add_coeff(int idx, double c) { coeffs_[idx] += c; }

  void accumulate(std::vector<std::array<double, 2>>& out) const {
    for (std::size_t p = 0; p < coeffs_.size(); ++p) {
      const double c = coeffs_[p];
      if (c == 0.0 || grads_[p].degenerate) continue;
      out[firsts_[p]][0] += c * grads_[p].wrt_a[0];
      out[firsts_[p]][1] += c * grads_[p].wrt_a[1];
      out[seconds_[p]][0] += c * grads_[p].wrt_b[0];
      out[seconds_[p]][1] += c * grads_[p].wrt_b[1];
    }
  }

 private:
  std::span<const PoincarePoint> embeddings_;
  bool with_gradients_;
  std::unordered_map<PairKey, int, PairKeyHash> index_;
  std::vector<double> depths_;
  std::vector<geometry::LcaGradient> grads_;
  std::vector<double> coeffs_;
  std::vector<int> firsts_, seconds_;
};

void check_inputs(std::span<const PoincarePoint> embeddings,
                  const SimilarityGraph& graph, const HcLossConfig& cfg) {
  if (static_cast<int>(embeddings.size()) != graph.n) {
    throw std::invalid_argument("hc_loss: embeddings/graph size mismatch");
  }
  if (cfg.temperature <= 0.0) {
    throw std::invalid_argument("hc_loss: temperature must be positive");
  }
}

}  // namespace

double triplet_similarity(const PoincarePoint& e_i, const PoincarePoint& e_j,
                          const PoincarePoint& e_k, double w_ij, double w_ik,
                          double w_jk, double tau) {
  const std::array<double, 3> depths = {geometry::lca_depth(e_i, e_j),
                                        geometry::lca_depth(e_i, e_k),
                                        geometry::lca_depth(e_j, e_k)};
  return depth_softmax(depths, {w_ij, w_ik, w_jk}, tau).value;
}

double hc_loss(std::span<const PoincarePoint> embeddings,
               const SimilarityGraph& graph, std::span<const Triplet> triplets,
               const HcLossConfig& cfg) {
  check_inputs(embeddings, graph, cfg);
  PairCache cache(embeddings, false);
  double loss = 0.0;
  for (const Triplet& t : triplets) {
    const std::array<double, 3> depths = {
        cache.depth(cache.index_of(t.i, t.j)),
        cache.depth(cache.index_of(t.i, t.k)),
        cache.depth(cache.index_of(t.j, t.k))};
    const std::array<double, 3> w = {graph.weight(t.i, t.j),
                                     graph.weight(t.i, t.k),
                                     graph.weight(t.j, t.k)};
    const Softmax3 sm = depth_softmax(depths, w, cfg.temperature);
    loss += w[0] + w[1] + w[2] - sm.value;
  }
  return loss;
}

std::vector<std::array<double, 2>> hc_loss_backward(
    std::span<const PoincarePoint> embeddings, const SimilarityGraph& graph,
    std::span<const Triplet> triplets, const HcLossConfig& cfg) {
  check_inputs(embeddings, graph, cfg);
  PairCache cache(embeddings, true);
  const double inv_tau = 1.0 / cfg.temperature;
  for (const Triplet& t : triplets) {
    const std::array<int, 3> pair_idx = {cache.index_of(t.i, t.j),
                                         cache.index_of(t.i, t.k),
                                         cache.index_of(t.j, t.k)};
    const std::array<double, 3> depths = {cache.depth(pair_idx[0]),
                                          cache.depth(pair_idx[1]),
                                          cache.depth(pair_idx[2])};
    const std::array<double, 3> w = {graph.weight(t.i, t.j),
                                     graph.weight(t.i, t.k),
                                     graph.weight(t.j, t.k)};
    const Softmax3 sm = depth_softmax(depths, w, cfg.temperature);
    // d(loss)/d(depth_t) = -d(value)/d(depth_t) = -p_t (w_t - value) / tau
    for (int a = 0; a < 3; ++a) {
      cache.add_coeff(pair_idx[a], -inv_tau * sm.p[a] * (w[a] - sm.value));
    }
  }
  std::vector<std::array<double, 2>> grads(embeddings.size(), {0.0, 0.0});
  cache.accumulate(grads);
  return grads;
}

HcLossConfig anneal(const HcLossConfig& cfg, int epoch) {
  HcLossConfig out = cfg;
  if (epoch > 0 && cfg.anneal_every > 0 && epoch % cfg.anneal_every == 0) {
    out.temperature = std::max(cfg.temperature * cfg.anneal_factor, kMinTemperature);
  }
  return out;
}

}  // namespace hhc::hyp_hc
