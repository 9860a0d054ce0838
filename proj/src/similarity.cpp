#include "hhc/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "hhc/rng.hpp"

namespace hhc::similarity {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::uint64_t choose2(std::uint64_t m) { return m * (m - 1) / 2; }
std::uint64_t choose3(std::uint64_t m) {
  return m < 3 ? 0 : m * (m - 1) / 2 * (m - 2) / 3;
}

// Lexicographic rank -> (i, j, k). Ranks with first index < i number
// C(n,3) - C(n-i,3), so i is found by binary search, then j, then k.
Triplet unrank(std::uint64_t rank, int n) {
  const std::uint64_t total = choose3(static_cast<std::uint64_t>(n));
  int lo = 0, hi = n - 3;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (total - choose3(static_cast<std::uint64_t>(n - mid)) <= rank) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const int i = lo;
  std::uint64_t rem = rank - (total - choose3(static_cast<std::uint64_t>(n - i)));
  const std::uint64_t pairs = choose2(static_cast<std::uint64_t>(n - 1 - i));
  int jlo = i + 1, jhi = n - 2;
  while (jlo < jhi) {
    const int mid = (jlo + jhi + 1) / 2;
    if (pairs - choose2(static_cast<std::uint64_t>(n - 1 - mid)) <= rem) {
      jlo = mid;
    } else {
      jhi = mid - 1;
    }
  }
  const int j = jlo;
  rem -= pairs - choose2(static_cast<std::uint64_t>(n - 1 - j));
  const int k = j + 1 + static_cast<int>(rem);
  return {i, j, k};
}

}  // namespace

SimilarityGraph build_similarity(const Matrix& features, Kind kind,
                                 const KernelParams& params) {
  const int n = features.rows;
  const int d = features.cols;
  if (n < 2) throw std::invalid_argument("build_similarity: need at least 2 rows");
  if (d < 1) throw std::invalid_argument("build_similarity: need at least 1 column");
  for (double v : features.data) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("build_similarity: non-finite feature entry");
    }
  }

  SimilarityGraph graph(n);
  if (kind == Kind::kCosineShifted) {
    std::vector<double> norms(n);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (double v : features.row(i)) s += v * v;
      norms[i] = std::sqrt(s);
      if (norms[i] == 0.0) {
        throw std::invalid_argument("build_similarity: zero-norm row " +
                                    std::to_string(i) + " under cosine kind");
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double dot = 0.0;
        auto ri = features.row(i);
        auto rj = features.row(j);
        for (int c = 0; c < d; ++c) dot += ri[c] * rj[c];
        graph.set_weight(i, j, clamp01(0.5 * (1.0 + dot / (norms[i] * norms[j]))));
      }
    }
  } else {
    const double inv = 1.0 / (2.0 * params.rbf_sigma * params.rbf_sigma);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double d_sq = 0.0;
        auto ri = features.row(i);
        auto rj = features.row(j);
        for (int c = 0; c < d; ++c) {
          const double diff = ri[c] - rj[c];
          d_sq += diff * diff;
        }
        graph.set_weight(i, j, clamp01(std::exp(-d_sq * inv)));
      }
    }
  }
  return graph;
}

std::uint64_t triplet_count(int n) {
  return n < 3 ? 0 : choose3(static_cast<std::uint64_t>(n));
}

std::vector<Triplet> sample_triplets(int n, const TripletMode& mode) {
  if (n < 3) throw std::invalid_argument("sample_triplets: need n >= 3");
  const std::uint64_t total = triplet_count(n);

  if (mode.kind == TripletMode::Kind::kAll || mode.budget >= total) {
    if (mode.kind == TripletMode::Kind::kUniform && mode.budget == 0) {
      throw std::invalid_argument("sample_triplets: uniform budget must be >= 1");
    }
    std::vector<Triplet> out;
    out.reserve(total);
    for (int i = 0; i < n - 2; ++i) {
      for (int j = i + 1; j < n - 1; ++j) {
        for (int k = j + 1; k < n; ++k) out.push_back({i, j, k});
      }
    }
    return out;
  }

  if (mode.budget == 0) {
    throw std::invalid_argument("sample_triplets: uniform budget must be >= 1");
  }
  // Floyd's algorithm draws exactly `budget` distinct ranks.
  Rng rng(mode.seed);
  std::unordered_set<std::uint64_t> ranks;
  ranks.reserve(mode.budget * 2);
  for (std::uint64_t t = total - mode.budget; t < total; ++t) {
    const std::uint64_t r = rng.bounded(t + 1);
    if (!ranks.insert(r).second) ranks.insert(t);
  }
  std::vector<std::uint64_t> sorted(ranks.begin(), ranks.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Triplet> out;
  out.reserve(sorted.size());
  for (std::uint64_t r : sorted) out.push_back(unrank(r, n));
  return out;
}

}  // namespace hhc::similarity
