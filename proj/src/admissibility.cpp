#include "elastica/admissibility.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "elastica/stencils.hpp"

namespace elastica {

const char* to_string(AdmissibilityVerdict v) {
  switch (v) {
    case AdmissibilityVerdict::Rejected: return "rejected";
    case AdmissibilityVerdict::Geometric: return "geometric";
    case AdmissibilityVerdict::Analytic: return "analytic";
  }
  return "?";
}

namespace {

double end_sign(CurveEnd e) { return e == CurveEnd::Start ? 1.0 : -1.0; }

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

AdmissibilityReport check_geometric(const NetworkState& state, double mu,
                                    const Tolerances& tol) {
  const auto geo = compute_geometry(state);
  const int n = state.grid_n();
  AdmissibilityReport rep;
  bool geometric_ok = true;
  bool analytic_ok = true;

  for (size_t jn = 0; jn < state.topology().junctions.size(); ++jn) {
    const auto& ends = state.topology().junctions[jn].ends;
    JunctionReport jr;
    jr.junction = static_cast<int>(jn);

    std::array<Vec2, 3> tau{}, nu{}, pos{};
    Vec2 third_order = Vec2::Zero();
    for (int e = 0; e < 3; ++e) {
      const auto& g = geo[ends[e].curve];
      const int idx = ends[e].end == CurveEnd::Start ? 0 : n;
      tau[e] = g.tau[idx];
      nu[e] = g.nu[idx];
      pos[e] = g.gamma[idx];
      jr.max_abs_k = std::max(jr.max_abs_k, std::abs(g.k[idx]));
      jr.max_abs_gamma_xx = std::max(jr.max_abs_gamma_xx, g.gamma_xx[idx].norm());
      third_order +=
          end_sign(ends[e].end) * (2.0 * g.boundary_k_s(idx) * g.nu[idx] - mu * g.tau[idx]);
    }
    for (int e = 0; e < 3; ++e)
      jr.concurrency_gap = std::max(jr.concurrency_gap, (pos[e] - pos[(e + 1) % 3]).norm());
    jr.third_order_residual = third_order.norm();

    // alpha_1 between tau^2,tau^3; alpha_2 between tau^3,tau^1; alpha_3 between tau^1,tau^2
    for (int i = 0; i < 3; ++i) {
      const Vec2& a = tau[(i + 1) % 3];
      const Vec2& b = tau[(i + 2) % 3];
      jr.angles[i] = std::atan2(std::abs(cross2(a, b)), a.dot(b));
      jr.rho_hat = std::max(jr.rho_hat, std::abs(cross2(a, b)));
      if (std::abs(cross2(a, b)) > 1e-12) jr.two_positive_angle = true;
    }
    jr.normals_span = std::abs(cross2(nu[0], nu[1])) > 1e-12 ||
                      std::abs(cross2(nu[1], nu[2])) > 1e-12 ||
                      std::abs(cross2(nu[0], nu[2])) > 1e-12;
    jr.det_m = 1.0 - tau[0].dot(tau[1]) * tau[1].dot(tau[2]) * tau[2].dot(tau[0]);

    if (jr.concurrency_gap > 1e-12) {
      geometric_ok = false;
      rep.reasons.push_back(fmt::format("junction {}: concurrency gap {:.3e}", jn,
                                        jr.concurrency_gap));
    }
    if (jr.max_abs_k > tol.adm_curvature) {
      geometric_ok = false;
      rep.reasons.push_back(fmt::format(
          "junction {}: curvature condition fails, max |k| = {:.3e}", jn, jr.max_abs_k));
    }
    if (jr.third_order_residual > tol.adm_third_order) {
      geometric_ok = false;
      rep.reasons.push_back(fmt::format(
          "junction {}: third-order condition fails, residual = {:.3e}", jn,
          jr.third_order_residual));
    }
    if (!jr.two_positive_angle || !jr.normals_span || jr.det_m < tol.det_m_min) {
      geometric_ok = false;
      rep.reasons.push_back(
          fmt::format("junction {}: degenerate (det M = {:.3e})", jn, jr.det_m));
    }
    if (jr.max_abs_gamma_xx > tol.adm_second_order) analytic_ok = false;
    rep.junctions.push_back(jr);
  }

  for (const auto& ep : state.topology().endpoints) {
    const auto& g = geo[ep.end.curve];
    const int idx = ep.end.end == CurveEnd::Start ? 0 : n;
    EndpointReport er;
    er.end = ep.end;
    er.abs_k = std::abs(g.k[idx]);
    er.abs_gamma_xx = g.gamma_xx[idx].norm();
    er.position_gap = (g.gamma[idx] - ep.position).norm();
    if (er.abs_k > tol.adm_curvature) {
      geometric_ok = false;
      rep.reasons.push_back(fmt::format(
          "endpoint of curve {}: curvature condition fails, |k| = {:.3e}", ep.end.curve,
          er.abs_k));
    }
    if (er.position_gap > 1e-12) {
      geometric_ok = false;
      rep.reasons.push_back(
          fmt::format("endpoint of curve {}: off its pinned position", ep.end.curve));
    }
    if (er.abs_gamma_xx > tol.adm_second_order) analytic_ok = false;
    rep.endpoints.push_back(er);
  }

  rep.verdict = !geometric_ok ? AdmissibilityVerdict::Rejected
              : analytic_ok  ? AdmissibilityVerdict::Analytic
                             : AdmissibilityVerdict::Geometric;
  return rep;
}

// ---------------------------------------------------------------------------
// theta maps

namespace {

struct Quintic {
  double a, c3, c4, c5;
  double eval(double x) const {
    return x + 0.5 * a * x * x + c3 * x * x * x + c4 * x * x * x * x + c5 * x * x * x * x * x;
  }
  double deriv(double x) const {
    return 1.0 + a * x + 3 * c3 * x * x + 4 * c4 * x * x * x + 5 * c5 * x * x * x * x;
  }
};

Quintic solve_quintic(double a, double b) {
  // theta = x + a/2 x^2 + c3 x^3 + c4 x^4 + c5 x^5 with theta(1)=1, theta'(1)=1,
  // theta''(1)=b.
  Eigen::Matrix3d M;
  M << 1, 1, 1, 3, 4, 5, 6, 12, 20;
  Eigen::Vector3d r(-0.5 * a, -a, b - a);
  Eigen::Vector3d c = M.partialPivLu().solve(r);
  return Quintic{a, c[0], c[1], c[2]};
}

/// Piecewise-Taylor construction with numerically mollified joints; used when
/// the quintic's slope dips below 1/4.
struct MollifiedTheta {
  double a, b, delta, w;
  std::vector<double> grid;  // mollified values on a fine uniform grid
  int fine_n;

  double p(double x) const { return x + 0.5 * a * x * x; }
  double q(double x) const { return x + 0.5 * b * (x - 1.0) * (x - 1.0); }

  double piecewise(double x) const {
    const double x0 = 3.0 * delta, x1 = 1.0 - 3.0 * delta;
    if (x <= x0) return p(x);
    if (x >= x1) return q(x);
    const double t = (x - x0) / (x1 - x0);
    return (1.0 - t) * p(x0) + t * q(x1);
  }

  static double cutoff(double t) {  // smoothstep 0->1 on [0,1]
    t = std::clamp(t, 0.0, 1.0);
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  }

  /// 1 on the kink neighborhoods' span, 0 near the ends of [0,1].
  double eta(double x) const {
    const double lo0 = 1.5 * delta, lo1 = 2.5 * delta;
    const double hi1 = 1.0 - 2.5 * delta, hi0 = 1.0 - 1.5 * delta;
    if (x <= lo0 || x >= hi0) return 0.0;
    if (x < lo1) return cutoff((x - lo0) / (lo1 - lo0));
    if (x > hi1) return cutoff((hi0 - x) / (hi0 - hi1));
    return 1.0;
  }

  void build() {
    fine_n = 1 << 13;
    const double fh = 1.0 / fine_n;
    // smooth compact bump kernel on [-w, w]
    const int kw = std::max(2, static_cast<int>(std::ceil(w / fh)));
    std::vector<double> kernel(2 * kw + 1);
    double ksum = 0.0;
    for (int i = -kw; i <= kw; ++i) {
      const double u = double(i) / kw;
      kernel[i + kw] = std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
      ksum += kernel[i + kw];
    }
    for (double& v : kernel) v /= ksum;

    grid.resize(fine_n + 1);
    for (int j = 0; j <= fine_n; ++j) {
      const double x = j * fh;
      const double e = eta(x);
      if (e == 0.0) {
        grid[j] = piecewise(x);
        continue;
      }
      double conv = 0.0;
      for (int i = -kw; i <= kw; ++i) conv += kernel[i + kw] * piecewise(x + i * fh);
      grid[j] = (1.0 - e) * piecewise(x) + e * conv;
    }
  }

  double eval(double x) const {
    if (x <= 1.5 * delta) return p(x);
    if (x >= 1.0 - 1.5 * delta) return q(x);
    // local cubic interpolation of the fine grid
    const double fx = x * fine_n;
    int i = std::clamp(static_cast<int>(std::floor(fx)) - 1, 0, fine_n - 3);
    const double t = fx - i;
    const double y0 = grid[i], y1 = grid[i + 1], y2 = grid[i + 2], y3 = grid[i + 3];
    return y0 * (-(t - 1) * (t - 2) * (t - 3) / 6.0) + y1 * (t * (t - 2) * (t - 3) / 2.0) +
           y2 * (-t * (t - 1) * (t - 3) / 2.0) + y3 * (t * (t - 1) * (t - 2) / 6.0);
  }
};

}  // namespace

ThetaMap build_theta(double a, double b) {
  ThetaMap map;
  const int probe_n = 4096;

  const Quintic quintic = solve_quintic(a, b);
  double min_slope = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= probe_n; ++j)
    min_slope = std::min(min_slope, quintic.deriv(double(j) / probe_n));
  if (min_slope >= 0.25) {
    map.eval = [quintic](double x) { return quintic.eval(x); };
    map.used_fallback = false;
    map.min_slope = min_slope;
  } else {
    auto moll = std::make_shared<MollifiedTheta>();
    moll->a = a;
    moll->b = b;
    moll->delta = std::min({1.0 / 24.0, 1.0 / (12.0 * (std::abs(a) + 1.0)),
                            1.0 / (12.0 * (std::abs(b) + 1.0))});
    moll->w = moll->delta / 4.0;
    moll->build();
    map.eval = [moll](double x) { return moll->eval(x); };
    map.used_fallback = true;
    min_slope = std::numeric_limits<double>::infinity();
    for (int j = 0; j < probe_n; ++j) {
      const double x0 = double(j) / probe_n, x1 = double(j + 1) / probe_n;
      min_slope = std::min(min_slope, (map.eval(x1) - map.eval(x0)) * probe_n);
    }
    map.min_slope = min_slope;
  }

  // endpoint constraint residuals by one-sided differences on a fine spacing
  const double fh = 1e-5;
  auto d1 = [&](double x0, int sgn) {
    return sgn * (-1.5 * map.eval(x0) + 2.0 * map.eval(x0 + sgn * fh) -
                  0.5 * map.eval(x0 + sgn * 2 * fh)) / fh;
  };
  auto d2 = [&](double x0, int sgn) {
    return (2.0 * map.eval(x0) - 5.0 * map.eval(x0 + sgn * fh) +
            4.0 * map.eval(x0 + sgn * 2 * fh) - map.eval(x0 + sgn * 3 * fh)) / (fh * fh);
  };
  map.max_constraint_residual = std::max({
      std::abs(map.eval(0.0)), std::abs(map.eval(1.0) - 1.0),
      std::abs(d1(0.0, +1) - 1.0), std::abs(d1(1.0, -1) - 1.0),
      std::abs(d2(0.0, +1) - a), std::abs(d2(1.0, -1) - b)});
  return map;
}

// ---------------------------------------------------------------------------

NetworkState make_admissible(const NetworkState& state, double mu, const Tolerances& tol) {
  const auto pre = check_geometric(state, mu, tol);
  if (!pre.geometric())
    throw InadmissibleState(fmt::format("make_admissible: state is not geometrically admissible ({})",
                                        pre.reasons.empty() ? "" : pre.reasons.front()));

  NetworkState out = state;
  const int n = state.grid_n();
  for (int c = 0; c < state.curve_count(); ++c) {
    if (state.topology().closed[c]) continue;
    const auto g = compute_curve_geometry(state, c);
    const double a = -g.gamma_xx[0].dot(g.gamma_x[0]) / (g.speed[0] * g.speed[0]);
    const double b = -g.gamma_xx[n].dot(g.gamma_x[n]) / (g.speed[n] * g.speed[n]);
    const auto theta = build_theta(a, b);
    const CubicSpline interp(g.gamma);
    std::vector<Vec2> resampled(n + 1);
    resampled[0] = g.gamma[0];
    resampled[n] = g.gamma[n];
    for (int j = 1; j < n; ++j) resampled[j] = interp.eval(theta.eval(double(j) / n));
    out.set_curve_points(c, resampled);
  }

  // Cancel the leftover discrete second difference at each open end by nudging
  // the adjacent node (O(h^2)-size correction, curve ends stay fixed).
  const auto& ops = DiffOps::get(n, false);
  for (int c = 0; c < state.curve_count(); ++c) {
    if (state.topology().closed[c]) continue;
    auto pts = out.curve_points(c);
    {
      const StencilRow& row = ops.row(2, 0);
      Vec2 d2 = Vec2::Zero();
      for (size_t k = 0; k < row.weights.size(); ++k) d2 += row.weights[k] * pts[row.offset + k];
      const int adj = 1;
      pts[adj] -= d2 / row.weights[adj - row.offset];
    }
    {
      const StencilRow& row = ops.row(2, n);
      Vec2 d2 = Vec2::Zero();
      for (size_t k = 0; k < row.weights.size(); ++k) d2 += row.weights[k] * pts[row.offset + k];
      const int adj = n - 1;
      pts[adj] -= d2 / row.weights[adj - row.offset];
    }
    out.set_curve_points(c, pts);
  }

  calibrate_third_order(out, mu);
  out.validate();
  return out;
}

void calibrate_third_order(NetworkState& state, double mu) {
  // The junction value of k_s is <D3 gamma, nu>/|gamma_x|^3 plus a term that
  // only involves the first two derivatives, so it is exactly linear in the
  // position of the farthest node of the one-sided D3 stencil, with frozen
  // tangents and speeds. That node lies outside every other end stencil, so
  // a normal-direction correction of it per incident curve meets the
  // two-component junction condition exactly (minimum-norm over the three
  // corrections) without touching curvature or concurrency at the junction.
  const int n = state.grid_n();
  const auto& ops = DiffOps::get(n, false);
  for (const auto& junction : state.topology().junctions) {
    Vec2 residual = Vec2::Zero();
    Eigen::Matrix<double, 2, 3> M;
    std::array<int, 3> curve_of{}, node_of{};
    std::array<Vec2, 3> normal_of{};
    for (int e = 0; e < 3; ++e) {
      const auto& end = junction.ends[e];
      const auto g = compute_curve_geometry(state, end.curve);
      const bool start = end.end == CurveEnd::Start;
      const int idx = start ? 0 : n;
      const double sigma = start ? 1.0 : -1.0;
      residual += sigma * (2.0 * g.boundary_k_s(idx) * g.nu[idx] - mu * g.tau[idx]);
      const StencilRow& row = ops.row(3, idx);
      const int far = start ? row.offset + static_cast<int>(row.weights.size()) - 1
                            : row.offset;
      const double w_far = row.weights[far - row.offset];
      const double s3 = g.speed[idx] * g.speed[idx] * g.speed[idx];
      curve_of[e] = end.curve;
      node_of[e] = far;
      normal_of[e] = g.nu[idx];
      M.col(e) = sigma * 2.0 * (w_far / s3) * g.nu[idx];
    }
    const Eigen::Vector2d y = (M * M.transpose()).ldlt().solve(Eigen::Vector2d(-residual));
    const Eigen::Vector3d alpha = M.transpose() * y;
    for (int e = 0; e < 3; ++e)
      state.set_point(curve_of[e], node_of[e],
                      state.point(curve_of[e], node_of[e]) + alpha[e] * normal_of[e]);
  }
}

NetworkState reparametrize_constant_speed(const NetworkState& state) {
  NetworkState out = state;
  const int n = state.grid_n();
  const double h = 1.0 / n;
  for (int c = 0; c < state.curve_count(); ++c) {
    const auto g = compute_curve_geometry(state, c);
    // cumulative arclength by trapezoid of discrete speeds
    std::vector<double> s(n + 1, 0.0);
    for (int j = 0; j < n; ++j) s[j + 1] = s[j] + 0.5 * h * (g.speed[j] + g.speed[j + 1]);
    const double L = s[n];

    // monotone cubic slopes for s(x) (Fritsch-Carlson)
    std::vector<double> slope(n + 1);
    std::vector<double> d(n);
    for (int j = 0; j < n; ++j) d[j] = (s[j + 1] - s[j]) / h;
    slope[0] = d[0];
    slope[n] = d[n - 1];
    for (int j = 1; j < n; ++j)
      slope[j] = (d[j - 1] * d[j] <= 0.0) ? 0.0
                                          : 2.0 * d[j - 1] * d[j] / (d[j - 1] + d[j]);

    auto s_of_x = [&](double x) {
      int i = std::clamp(static_cast<int>(std::floor(x * n)), 0, n - 1);
      const double t = (x - i * h) / h;
      const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
      const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
      return h00 * s[i] + h10 * h * slope[i] + h01 * s[i + 1] + h11 * h * slope[i + 1];
    };
    auto ds_of_x = [&](double x) {
      int i = std::clamp(static_cast<int>(std::floor(x * n)), 0, n - 1);
      const double t = (x - i * h) / h;
      const double g00 = 6 * t * (t - 1), g10 = (1 - t) * (1 - 3 * t);
      const double g01 = -6 * t * (t - 1), g11 = t * (3 * t - 2);
      return (g00 * s[i] / h + g10 * slope[i] + g01 * s[i + 1] / h + g11 * slope[i + 1]);
    };

    const CubicSpline interp(g.gamma);
    std::vector<Vec2> pts = g.gamma;
    for (int j = 1; j < n; ++j) {
      const double target = L * j / n;
      // bracketing index then Newton with bisection safeguard
      double lo = 0.0, hi = 1.0, x = double(j) / n;
      for (int it = 0; it < 40; ++it) {
        const double f = s_of_x(x) - target;
        if (f > 0) hi = x; else lo = x;
        const double dsx = ds_of_x(x);
        double next = dsx > 0 ? x - f / dsx : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-15) { x = next; break; }
        x = next;
      }
      pts[j] = interp.eval(x);
    }
    if (!state.topology().closed[c]) {
      pts[0] = g.gamma[0];
      pts[n] = g.gamma[n];
    } else {
      pts[0] = g.gamma[0];
      pts[n] = pts[0];
    }
    out.set_curve_points(c, pts);
  }
  out.set_time(state.time());
  out.validate();
  return out;
}

JunctionTangentialSolve junction_tangential_solve(const std::array<Vec2, 3>& tau,
                                                  const std::array<Vec2, 3>& nu,
                                                  const std::array<double, 3>& A,
                                                  double det_m_min) {
  const double c12 = tau[0].dot(tau[1]);
  const double c23 = tau[1].dot(tau[2]);
  const double c31 = tau[2].dot(tau[0]);
  const double r1 = nu[0].dot(tau[1]) * A[0];
  const double r2 = nu[1].dot(tau[2]) * A[1];
  const double r3 = nu[2].dot(tau[0]) * A[2];

  const double det = 1.0 - c12 * c23 * c31;
  if (det < det_m_min)
    throw DegenerateJunction(fmt::format("junction tangential system det M = {:.3e}", det));

  // M = [[-c12, 1, 0], [0, -c23, 1], [1, 0, -c31]], Cramer's rule
  auto det3 = [](double a11, double a12, double a13, double a21, double a22, double a23,
                 double a31, double a32, double a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
  };
  JunctionTangentialSolve out;
  out.det_m = det;
  out.T[0] = det3(r1, 1, 0, r2, -c23, 1, r3, 0, -c31) / det;
  out.T[1] = det3(-c12, r1, 0, 0, r2, 1, 1, r3, -c31) / det;
  out.T[2] = det3(-c12, 1, r1, 0, -c23, r2, 1, 0, r3) / det;
  return out;
}

}  // namespace elastica
