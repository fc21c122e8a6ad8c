#pragma once

// Shared fixtures and small numeric utilities for the test binaries.

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "elastica/scenes.hpp"
#include "elastica/state.hpp"
#include "elastica/topology.hpp"

namespace elastica::testutil {

/// Open single-curve state sampling f on [0,1]; the endpoints are pinned at
/// f(0), f(1).
inline NetworkState open_curve_state(const std::function<Vec2(double)>& f, int n) {
  NetworkState state(segment_topology(f(0.0), f(1.0)), n);
  std::vector<Vec2> pts(n + 1);
  for (int j = 0; j <= n; ++j) pts[j] = f(double(j) / n);
  state.set_curve_points(0, pts);
  state.validate();
  return state;
}

/// Closed single-curve state sampling f on [0,1) (f(1) is never evaluated).
inline NetworkState closed_curve_state(const std::function<Vec2(double)>& f, int n) {
  NetworkState state(closed_curve_topology(), n);
  std::vector<Vec2> pts(n + 1);
  for (int j = 0; j <= n; ++j) pts[j] = f(double(j % n) / n);
  state.set_curve_points(0, pts);
  state.validate();
  return state;
}

/// Counter-clockwise circle, constant speed.
inline NetworkState circle_state(double r, int n, Vec2 center = Vec2::Zero()) {
  return closed_curve_state(
      [r, center](double x) {
        const double a = 2.0 * M_PI * x;
        return Vec2(center.x() + r * std::cos(a), center.y() + r * std::sin(a));
      },
      n);
}

inline Vec2 centroid(const NetworkState& state) {
  Vec2 c = Vec2::Zero();
  const int n = state.grid_n();
  for (int j = 0; j < n; ++j) c += state.point(0, j);
  return c / n;
}

inline double mean_radius(const NetworkState& state) {
  const Vec2 c = centroid(state);
  double sum = 0.0;
  const int n = state.grid_n();
  for (int j = 0; j < n; ++j) sum += (state.point(0, j) - c).norm();
  return sum / n;
}

inline double radius_spread(const NetworkState& state) {
  const Vec2 c = centroid(state);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const int n = state.grid_n();
  for (int j = 0; j < n; ++j) {
    const double r = (state.point(0, j) - c).norm();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi - lo;
}

/// Classical fixed-step RK4 for a scalar ODE y' = f(t, y); fine steps make the
/// integration error negligible next to the tolerances it is compared under.
inline double rk4_scalar(const std::function<double(double, double)>& f, double y0,
                         double t0, double t1, int steps) {
  double y = y0, t = t0;
  const double h = (t1 - t0) / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(t, y);
    const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return y;
}

/// Radius evolution of a counter-clockwise circle: r' = 1/r^3 - mu/r.
inline double circle_radius_ode(double r0, double mu, double t, int steps_per_unit = 200000) {
  if (t == 0.0) return r0;
  const int steps = std::max(1000, int(t * steps_per_unit));
  return rk4_scalar([mu](double, double r) { return 1.0 / (r * r * r) - mu / r; }, r0,
                    0.0, t, steps);
}

inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

inline double directed_hausdorff(const NetworkState& a, const NetworkState& b) {
  double worst = 0.0;
  const int n = a.grid_n();
  for (int ca = 0; ca < a.curve_count(); ++ca) {
    for (int j = 0; j <= n; ++j) {
      const Vec2 p = a.point(ca, j);
      double best = std::numeric_limits<double>::infinity();
      for (int cb = 0; cb < b.curve_count(); ++cb)
        for (int k = 0; k < b.grid_n(); ++k)
          best = std::min(best,
                          point_segment_distance(p, b.point(cb, k), b.point(cb, k + 1)));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

/// Symmetric Hausdorff distance between two networks viewed as polyline sets.
inline double hausdorff(const NetworkState& a, const NetworkState& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

inline double max_node_distance(const NetworkState& a, const NetworkState& b) {
  double worst = 0.0;
  for (int i = 0; i < a.node_count(); ++i)
    worst = std::max(worst, (a.nodes()[i] - b.nodes()[i]).norm());
  return worst;
}

/// Same connectivity, affinely transformed samples and pinned positions.
inline NetworkState transformed_state(const NetworkState& state,
                                      const Eigen::Matrix2d& A, const Vec2& shift) {
  NetworkTopology topo = state.topology();
  for (auto& ep : topo.endpoints) ep.position = Vec2(A * ep.position + shift);
  NetworkState out(topo, state.grid_n());
  for (int i = 0; i < state.node_count(); ++i)
    out.nodes()[i] = Vec2(A * state.nodes()[i] + shift);
  out.set_time(state.time());
  return out;
}

inline Eigen::Matrix2d rotation(double angle) {
  Eigen::Matrix2d R;
  R << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return R;
}

}  // namespace elastica::testutil
