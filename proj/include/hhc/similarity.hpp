#pragma once

#include <cstdint>
#include <vector>

#include "hhc/matrix.hpp"

namespace hhc {

// Symmetric pairwise similarity matrix over n data points. Entries live in
// [0,1], the diagonal is zero.
struct SimilarityGraph {
  int n = 0;
  std::vector<double> weights;  // n*n row-major

  SimilarityGraph() = default;
  explicit SimilarityGraph(int n_points)
      : n(n_points), weights(static_cast<std::size_t>(n_points) * n_points, 0.0) {}

  double weight(int i, int j) const {
    return weights[static_cast<std::size_t>(i) * n + j];
  }
  void set_weight(int i, int j, double w) {
    weights[static_cast<std::size_t>(i) * n + j] = w;
    weights[static_cast<std::size_t>(j) * n + i] = w;
  }
};

// Index triple in canonical order i < j < k.
struct Triplet {
  int i, j, k;
  bool operator==(const Triplet&) const = default;
};

namespace similarity {

enum class Kind {
  kCosineShifted,  // (1 + cos(z_i, z_j)) / 2
  kRbf,            // exp(-|z_i - z_j|^2 / (2 sigma^2))
};

struct KernelParams {
  double rbf_sigma = 1.0;
};

// Throws std::invalid_argument for n < 2, d < 1, non-finite entries, or a
// zero-norm row under the cosine kind (the offending row is named).
SimilarityGraph build_similarity(const Matrix& features, Kind kind,
                                 const KernelParams& params = {});

struct TripletMode {
  enum class Kind { kAll, kUniform } kind = Kind::kAll;
  std::uint64_t budget = 0;  // number of draws in uniform mode
  std::uint64_t seed = 0;

  static TripletMode all() { return {Kind::kAll, 0, 0}; }
  static TripletMode uniform(std::uint64_t m, std::uint64_t seed) {
    return {Kind::kUniform, m, seed};
  }
};

// Number of canonical triplets over n points, C(n,3).
std::uint64_t triplet_count(int n);

// kAll: every canonical triplet in lexicographic order.
// kUniform: budget distinct triplets sampled uniformly (capped at C(n,3)),
// returned in lexicographic order, reproducible under the seed.
// Throws std::invalid_argument for n < 3 or a zero uniform budget.
std::vector<Triplet> sample_triplets(int n, const TripletMode& mode);

}  // namespace similarity
}  // namespace hhc
