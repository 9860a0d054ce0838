#include "hhc/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hhc::geometry {

namespace {

constexpr double kCollinearTol = 1e-12;   // |cross(a,b)| below this: diameter case
constexpr double kOriginKinkTol = 1e-9;   // geodesic this close to the origin: flag

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// 2 artanh(m) without forming (1+m)/(1-m) blowups for m near 1 (m <= kMaxRadius here).
double radial_depth(double m) { return std::log1p(2.0 * m / (1.0 - m)); }

// Center of the Euclidean circle through a and b orthogonal to the unit
// circle. Caller guarantees |cross(a,b)| is not tiny.
struct GeodesicCircle {
  double cx, cy;    // center, |c| > 1
  double norm_c;    // |c|
  double radius;    // sqrt(|c|^2 - 1)
  double det;       // cross(a, b)
};

GeodesicCircle geodesic_circle(const PoincarePoint& a, const PoincarePoint& b) {
  GeodesicCircle g;
  g.det = cross(a.x, a.y, b.x, b.y);
  const double r1 = 0.5 * (1.0 + a.norm_sq());
  const double r2 = 0.5 * (1.0 + b.norm_sq());
  g.cx = (b.y * r1 - a.y * r2) / g.det;
  g.cy = (a.x * r2 - b.x * r1) / g.det;
  const double c_sq = g.cx * g.cx + g.cy * g.cy;
  g.norm_c = std::sqrt(c_sq);
  g.radius = std::sqrt(std::max(c_sq - 1.0, 0.0));
  return g;
}

}  // namespace

double poincare_distance(const PoincarePoint& a, const PoincarePoint& b) {
  assert(a.in_disk() && b.in_disk());
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double d_sq = dx * dx + dy * dy;
  const double denom = (1.0 - a.norm_sq()) * (1.0 - b.norm_sq());
  const double arg = 1.0 + 2.0 * d_sq / denom;
  return std::acosh(std::max(arg, 1.0));
}

double distance_to_origin(const PoincarePoint& p) {
  assert(p.in_disk());
  return radial_depth(p.norm());
}

double lca_depth(const PoincarePoint& a, const PoincarePoint& b) {
  assert(a.in_disk() && b.in_disk());
  const double cr = cross(a.x, a.y, b.x, b.y);
  if (std::abs(cr) < kCollinearTol) {
    // Geodesic is (a segment of) a diameter. If the origin lies between the
    // endpoints the depth is exactly zero; otherwise the inner endpoint wins.
    const double dot = a.x * b.x + a.y * b.y;
    if (dot <= 0.0) return 0.0;
    return radial_depth(std::min(a.norm(), b.norm()));
  }
  const GeodesicCircle g = geodesic_circle(a, b);
  // Signed position of each endpoint relative to the ray from the center
  // through the origin. Opposite signs mean the circle's closest-to-origin
  // point lies between them on the arc.
  const double sa = cross(g.cx, g.cy, a.x, a.y);
  const double sb = cross(g.cx, g.cy, b.x, b.y);
  if (sa * sb <= 0.0) {
    const double m = 1.0 / (g.norm_c + g.radius);  // |c| - r, cancellation-free
    return radial_depth(m);
  }
  return radial_depth(std::min(a.norm(), b.norm()));
}

LcaGradient lca_depth_gradient(const PoincarePoint& a, const PoincarePoint& b) {
  assert(a.in_disk() && b.in_disk());
  LcaGradient out;

  const auto radial_branch = [&](const PoincarePoint& p, std::array<double, 2>& slot) {
    const double norm = p.norm();
    if (norm < kOriginKinkTol) {
      out.degenerate = true;  // depth has a kink where the segment touches 0
      return;
    }
    const double scale = 2.0 / ((1.0 - norm * norm) * norm);
    slot[0] = scale * p.x;
    slot[1] = scale * p.y;
  };

  const double cr = cross(a.x, a.y, b.x, b.y);
  if (std::abs(cr) < kCollinearTol) {
    const double dot = a.x * b.x + a.y * b.y;
    if (dot <= 0.0) {
      out.degenerate = true;
      return out;
    }
    if (a.norm_sq() <= b.norm_sq()) {
      radial_branch(a, out.wrt_a);
    } else {
      radial_branch(b, out.wrt_b);
    }
    return out;
  }

  const GeodesicCircle g = geodesic_circle(a, b);
  const double sa = cross(g.cx, g.cy, a.x, a.y);
  const double sb = cross(g.cx, g.cy, b.x, b.y);
  if (sa * sb > 0.0) {
    if (a.norm_sq() <= b.norm_sq()) {
      radial_branch(a, out.wrt_a);
    } else {
      radial_branch(b, out.wrt_b);
    }
    return out;
  }

  const double m = 1.0 / (g.norm_c + g.radius);
  if (m < kOriginKinkTol) {
    out.degenerate = true;
    return out;
  }
  // depth = 2 artanh(m(c)), m = |c| - r(c). Differentiating the linear system
  // defining c gives dc/da_k = (a_k - c_k) * M^{-1} e_1 (first row of the
  // system), and likewise for b with e_2. Everything collapses to scalar
  // multiples of (a - c) and (b - c).
  const double fprime = 2.0 / (1.0 - m * m);
  const double mc_scale = -m / (g.norm_c * g.radius);  // grad_c m = mc_scale * c
  const double ga = fprime * mc_scale * sb / g.det;    // grad_c m . M^{-1} e_1
  const double gb = fprime * mc_scale * (-sa) / g.det; // grad_c m . M^{-1} e_2
  out.wrt_a = {ga * (a.x - g.cx), ga * (a.y - g.cy)};
  out.wrt_b = {gb * (b.x - g.cx), gb * (b.y - g.cy)};
  return out;
}

PoincarePoint project_to_disk(double vx, double vy) {
  if (!std::isfinite(vx) || !std::isfinite(vy)) {
    throw std::invalid_argument("project_to_disk: non-finite input");
  }
  const double s = std::sqrt(vx * vx + vy * vy);
  // tanh(s)/s, Taylor-expanded where the direct quotient loses accuracy
  double scale;
  if (s < 1e-8) {
    scale = kMaxRadius * (1.0 - s * s / 3.0);
  } else {
    scale = kMaxRadius * std::tanh(s) / s;
  }
  return {vx * scale, vy * scale};
}

std::array<double, 2> project_to_disk_backward(double vx, double vy,
                                               double grad_x, double grad_y) {
  if (!std::isfinite(vx) || !std::isfinite(vy)) {
    throw std::invalid_argument("project_to_disk_backward: non-finite input");
  }
  const double s_sq = vx * vx + vy * vy;
  const double s = std::sqrt(s_sq);
  // Jacobian = alpha I + beta v v^T with alpha = r tanh(s)/s and
  // beta = r (sech^2(s) s - tanh(s)) / s^3.
  double alpha, beta;
  if (s < 1e-4) {
    alpha = kMaxRadius * (1.0 - s_sq / 3.0 + 2.0 * s_sq * s_sq / 15.0);
    beta = kMaxRadius * (-2.0 / 3.0 + 8.0 * s_sq / 15.0);
  } else {
    const double t = std::tanh(s);
    const double sech_sq = 1.0 - t * t;
    alpha = kMaxRadius * t / s;
    beta = kMaxRadius * (sech_sq * s - t) / (s_sq * s);
  }
  const double vdotg = vx * grad_x + vy * grad_y;
  return {alpha * grad_x + beta * vdotg * vx, alpha * grad_y + beta * vdotg * vy};
}

}  // namespace hhc::geometry
