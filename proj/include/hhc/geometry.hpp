#pragma once

#include <array>
#include <cmath>

namespace hhc {

// Margin kept between embeddings and the unit circle so that distance
// denominators stay bounded away from zero in double precision.
inline constexpr double kEpsBoundary = 1e-5;
inline constexpr double kMaxRadius = 1.0 - kEpsBoundary;

// A point of the open unit disk (curvature -1 hyperbolic plane).
struct PoincarePoint {
  double x = 0.0;
  double y = 0.0;

  double norm_sq() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm_sq()); }
  bool in_disk() const { return norm_sq() < 1.0; }
};

namespace geometry {

// arccosh(1 + 2|a-b|^2 / ((1-|a|^2)(1-|b|^2)))
double poincare_distance(const PoincarePoint& a, const PoincarePoint& b);

// Distance from the origin to a point lying on a radius, d(0, p) = 2 artanh|p|.
double distance_to_origin(const PoincarePoint& p);

// Depth at which a pair of embedded points merges: the hyperbolic distance
// from the disk origin (the root) to the geodesic segment joining them.
// Larger values mean the pair separates from the rest deeper in the tree.
double lca_depth(const PoincarePoint& a, const PoincarePoint& b);

struct LcaGradient {
  std::array<double, 2> wrt_a{0.0, 0.0};
  std::array<double, 2> wrt_b{0.0, 0.0};
  // Set when the geodesic passes (numerically) through the origin, where the
  // depth has a kink. Gradients are zeroed there instead of emitting NaNs.
  bool degenerate = false;
};

LcaGradient lca_depth_gradient(const PoincarePoint& a, const PoincarePoint& b);

// Smooth injective map from the plane into the disk of radius 1-kEpsBoundary:
// v -> v * (1-eps) * tanh(|v|) / |v|, with 0 -> 0.
// Throws std::invalid_argument on non-finite input.
PoincarePoint project_to_disk(double vx, double vy);

// Pullback of an upstream 2-vector gradient through project_to_disk.
std::array<double, 2> project_to_disk_backward(double vx, double vy,
                                               double grad_x, double grad_y);

}  // namespace geometry
}  // namespace hhc
