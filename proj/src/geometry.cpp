#include "elastica/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {

CurveGeometry compute_curve_geometry(const NetworkState& state, int curve) {
  const int n = state.grid_n();
  const bool closed = state.topology().closed[curve];
  const auto& ops = DiffOps::get(n, closed);
  const double h = 1.0 / n;

  CurveGeometry g;
  g.closed = closed;
  g.gamma = state.curve_points(curve);
  g.gamma_x = ops.apply(1, g.gamma);
  g.gamma_xx = ops.apply(2, g.gamma);
  g.gamma_xxx = ops.apply(3, g.gamma);
  g.gamma_xxxx = ops.apply(4, g.gamma);

  const int m = n + 1;
  g.speed.resize(m);
  g.tau.resize(m);
  g.nu.resize(m);
  g.k.resize(m);
  for (int j = 0; j < m; ++j) {
    g.speed[j] = g.gamma_x[j].norm();
    g.tau[j] = g.gamma_x[j] / g.speed[j];
    g.nu[j] = rot90(g.tau[j]);
    g.k[j] = g.gamma_xx[j].dot(g.nu[j]) / (g.speed[j] * g.speed[j]);
  }
  g.k_s = g.arclength_derivative(g.k);
  g.k_ss = g.arclength_derivative(g.k_s);

  g.ds.resize(m);
  for (int j = 0; j < m; ++j) {
    double w = 1.0;
    if (closed) {
      w = (j == n) ? 0.0 : 1.0;  // node n repeats node 0
    } else if (j == 0 || j == n) {
      w = 0.5;
    }
    g.ds[j] = w * h * g.speed[j];
    g.length += g.ds[j];
  }
  return g;
}

std::vector<double> CurveGeometry::arclength_derivative(const std::vector<double>& f) const {
  const int n = static_cast<int>(gamma.size()) - 1;
  const auto& ops = DiffOps::get(n, closed);
  auto d = ops.apply(1, f);
  for (size_t j = 0; j < d.size(); ++j) d[j] /= speed[j];
  return d;
}

double CurveGeometry::boundary_k_s(int j) const {
  const double s = speed[j];
  return gamma_xxx[j].dot(nu[j]) / (s * s * s) -
         3.0 * k[j] * gamma_xx[j].dot(tau[j]) / (s * s);
}

std::vector<double> CurveGeometry::normal_velocity(double mu) const {
  std::vector<double> a(k.size());
  for (size_t j = 0; j < k.size(); ++j)
    a[j] = 2.0 * k_ss[j] + k[j] * k[j] * k[j] - mu * k[j];
  return a;
}

std::vector<Vec2> CurveGeometry::velocity_vector(double mu) const {
  std::vector<Vec2> v(gamma.size());
  for (size_t j = 0; j < gamma.size(); ++j) {
    const double s2 = speed[j] * speed[j];
    const double s4 = s2 * s2;
    const double s6 = s4 * s2;
    const double s8 = s4 * s4;
    const Vec2 g1 = gamma_x[j], g2 = gamma_xx[j], g3 = gamma_xxx[j], g4 = gamma_xxxx[j];
    v[j] = 2.0 * g4 / s4 - 12.0 * g3 * g2.dot(g1) / s6 - 5.0 * g2 * g2.squaredNorm() / s6 -
           8.0 * g2 * g3.dot(g1) / s6 + 35.0 * g2 * std::pow(g2.dot(g1), 2) / s8 -
           mu * g2 / s2;
  }
  return v;
}

std::vector<double> CurveGeometry::tangential_velocity(double mu) const {
  const auto v = velocity_vector(mu);
  std::vector<double> t(v.size());
  for (size_t j = 0; j < v.size(); ++j) t[j] = v[j].dot(tau[j]);
  return t;
}

std::vector<double> CurveGeometry::curvature_time_rhs_geometric(double mu) const {
  // -A_ss - T k_s - k^2 A, with A_ss expanded through exact calculus on the
  // discrete k-derivative arrays: A_ss = 2 k_ssss + 3 k^2 k_ss + 6 k k_s^2 - mu k_ss.
  const auto k3 = arclength_derivative(k_ss);
  const auto k4 = arclength_derivative(k3);
  const auto T = tangential_velocity(mu);
  std::vector<double> rhs(k.size());
  for (size_t j = 0; j < k.size(); ++j) {
    const double A = 2.0 * k_ss[j] + k[j] * k[j] * k[j] - mu * k[j];
    const double A_ss = 2.0 * k4[j] + 3.0 * k[j] * k[j] * k_ss[j] +
                        6.0 * k[j] * k_s[j] * k_s[j] - mu * k_ss[j];
    rhs[j] = -A_ss - T[j] * k_s[j] - k[j] * k[j] * A;
  }
  return rhs;
}

std::vector<double> CurveGeometry::curvature_time_rhs_expanded(double mu) const {
  // -2 k_ssss - 5 k^2 k_ss - 6 k k_s^2 - T k_s - k^5 + mu (k_ss + k^3)
  const auto k3 = arclength_derivative(k_ss);
  const auto k4 = arclength_derivative(k3);
  const auto T = tangential_velocity(mu);
  std::vector<double> rhs(k.size());
  for (size_t j = 0; j < k.size(); ++j) {
    const double kk = k[j];
    rhs[j] = -2.0 * k4[j] - 5.0 * kk * kk * k_ss[j] - 6.0 * kk * k_s[j] * k_s[j] -
             T[j] * k_s[j] - kk * kk * kk * kk * kk + mu * (k_ss[j] + kk * kk * kk);
  }
  return rhs;
}

std::vector<CurveGeometry> compute_geometry(const NetworkState& state) {
  std::vector<CurveGeometry> geo;
  geo.reserve(state.curve_count());
  for (int c = 0; c < state.curve_count(); ++c)
    geo.push_back(compute_curve_geometry(state, c));
  return geo;
}

double elastic_energy(const std::vector<CurveGeometry>& geo, double mu) {
  double e = 0.0;
  for (const auto& g : geo)
    for (size_t j = 0; j < g.ds.size(); ++j) e += (g.k[j] * g.k[j] + mu) * g.ds[j];
  return e;
}

double elastic_energy(const NetworkState& state, double mu) {
  return elastic_energy(compute_geometry(state), mu);
}

double curve_length(const NetworkState& state, int curve) {
  return compute_curve_geometry(state, curve).length;
}

double total_length(const NetworkState& state) {
  double l = 0.0;
  for (int c = 0; c < state.curve_count(); ++c) l += curve_length(state, c);
  return l;
}

double l2_norm(const std::vector<CurveGeometry>& geo,
               const std::vector<std::vector<double>>& field) {
  double acc = 0.0;
  for (size_t c = 0; c < geo.size(); ++c)
    for (size_t j = 0; j < geo[c].ds.size(); ++j)
      acc += field[c][j] * field[c][j] * geo[c].ds[j];
  return std::sqrt(acc);
}

double dissipation_integral(const std::vector<CurveGeometry>& geo, double mu) {
  double acc = 0.0;
  for (const auto& g : geo) {
    const auto A = g.normal_velocity(mu);
    for (size_t j = 0; j < g.ds.size(); ++j) acc += A[j] * A[j] * g.ds[j];
  }
  return acc;
}

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < b.size(); ++i)
      best = std::min(best, point_segment_distance(p, b[i], b[i + 1]));
    if (b.size() == 1) best = (p - b[0]).norm();
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double polyline_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double state_hausdorff(const NetworkState& a, const NetworkState& b) {
  if (a.curve_count() != b.curve_count())
    throw GridMismatch("state_hausdorff: different curve counts");
  double worst = 0.0;
  for (int c = 0; c < a.curve_count(); ++c)
    worst = std::max(worst, polyline_hausdorff(a.curve_points(c), b.curve_points(c)));
  return worst;
}

}  // namespace elastica
