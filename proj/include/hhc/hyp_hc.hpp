#pragma once

#include <array>
#include <span>
#include <vector>

#include "hhc/geometry.hpp"
#include "hhc/similarity.hpp"

namespace hhc::hyp_hc {

struct HcLossConfig {
  double temperature = 0.05;  // softmax sharpness over merge depths
  double anneal_factor = 0.5;
  int anneal_every = 50;      // epochs between decays
};

inline constexpr double kMinTemperature = 1e-3;

// Softmax-weighted blend of the three pair similarities, weighted by how
// deep each pair merges. Sharpens to the deepest pair's similarity as
// tau -> 0; equals the mean when all depths tie.
double triplet_similarity(const PoincarePoint& e_i, const PoincarePoint& e_j,
                          const PoincarePoint& e_k, double w_ij, double w_ik,
                          double w_jk, double tau);

// Sum over triplets of (w_ij + w_ik + w_jk - triplet_similarity). Plain sum,
// not a mean; callers normalize by triplet count where scale-freeness matters.
// Throws std::invalid_argument when embeddings.size() != graph.n.
double hc_loss(std::span<const PoincarePoint> embeddings,
               const SimilarityGraph& graph, std::span<const Triplet> triplets,
               const HcLossConfig& cfg);

// Exact gradient of hc_loss with respect to every embedding coordinate.
// Pairs whose merge-depth gradient is degenerate contribute zero.
std::vector<std::array<double, 2>> hc_loss_backward(
    std::span<const PoincarePoint> embeddings, const SimilarityGraph& graph,
    std::span<const Triplet> triplets, const HcLossConfig& cfg);

// Geometric temperature decay: multiplies tau by anneal_factor whenever the
// (1-based event at) epoch is a positive multiple of anneal_every, clamped
// at kMinTemperature. Call once per epoch with the epoch index.
HcLossConfig anneal(const HcLossConfig& cfg, int epoch);

}  // namespace hhc::hyp_hc
