#include "elastica/scenes.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace elastica {

namespace {

constexpr double kPi = std::numbers::pi;

/// Composite Simpson quadrature of the unit direction field (cos psi, sin psi)
/// over [0, x]; used to realize curves prescribed by their tangent angle.
template <class F>
Vec2 integrate_direction(const F& psi, double x, int panels) {
  if (x <= 0.0) return Vec2::Zero();
  const int n = 2 * panels;
  const double h = x / n;
  auto dir = [&](double u) {
    const double a = psi(u);
    return Vec2(std::cos(a), std::sin(a));
  };
  Vec2 acc = dir(0.0) + dir(x);
  for (int i = 1; i < n; ++i) acc += ((i % 2) ? 4.0 : 2.0) * dir(i * h);
  return acc * (h / 3.0);
}

Scene steiner_triod() {
  Scene s;
  s.name = "steiner_triod";
  const Vec2 o = Vec2::Zero();
  std::array<Vec2, 3> tips;
  for (int i = 0; i < 3; ++i) {
    const double a = kPi / 2.0 + i * 2.0 * kPi / 3.0;
    tips[i] = Vec2(std::cos(a), std::sin(a));
  }
  s.topology = triod_topology(tips[0], tips[1], tips[2]);
  for (const auto& p : tips) s.primitives.push_back(std::make_shared<Segment>(o, p));
  s.params.mu = 0.2;
  s.params.grid_n = 64;
  s.params.dt = 1e-3;
  s.params.t_end = 1.0;
  return s;
}

Scene perturbed_triod(double amplitude) {
  Scene s;
  s.name = "perturbed_triod";
  // Normal bump vanishing to sixth order at both ends, applied identically to
  // all three legs so the network is exactly 3-fold rotation symmetric: the
  // second and third curves are built by rotating the first, not by separate
  // trigonometry, so the symmetry holds bitwise at t = 0.
  auto base = [amplitude](double x) {
    const double g = 4.0 * x * (1.0 - x);
    return Vec2(-amplitude * std::pow(g, 6), x);
  };
  Eigen::Matrix2d R;
  const double h = std::sqrt(3.0) / 2.0;
  R << -0.5, -h, h, -0.5;
  auto leg1 = [base, R](double x) { return Vec2(R * base(x)); };
  auto leg2 = [leg1, R](double x) { return Vec2(R * leg1(x)); };

  const Vec2 p0 = base(1.0);
  const Vec2 p1 = leg1(1.0);
  const Vec2 p2 = leg2(1.0);
  s.topology = triod_topology(p0, p1, p2);
  s.primitives.push_back(std::make_shared<AnalyticCurve>(base));
  s.primitives.push_back(std::make_shared<AnalyticCurve>(leg1));
  s.primitives.push_back(std::make_shared<AnalyticCurve>(leg2));
  s.params.mu = 0.2;
  s.params.grid_n = 64;
  s.params.dt = 1e-3;
  s.params.t_end = 1.0;
  // The sampled one-sided curvature at the junction is O(h^4 * bump scale),
  // well above the strict analytic tolerance; admission is geometric and the
  // calibration pass zeroes the boundary data exactly.
  s.params.tol.adm_curvature = 1e-2;
  return s;
}

Scene theta_symmetric() {
  Scene s;
  s.name = "theta_symmetric";
  // Two mirror-image lobes plus a straight axis between the junctions at
  // (-1, 0) and (1, 0). The lobes are prescribed by their tangent angle
  //   psi(u) = 120deg - 240deg * w(u)
  // with w a C^2 ramp from 0 to 1 whose first two derivatives vanish at the
  // ends: the tangents leave each junction at exactly 120 degrees from the
  // axis while curvature and its arclength derivative vanish at all six
  // curve-ends, so the junction conditions hold analytically. The ramp is
  // linear except near the ends (flattened by a quintic smoothstep over a
  // short window), which keeps the lobe close to a circular arc instead of
  // dwelling in the backward direction. Constant speed (|gamma_x| = lambda).
  constexpr double delta = 0.25;
  auto ramp_primitive = [](double t) {  // integral of 6t^5 - 15t^4 + 10t^3
    return ((t - 3.0) * t + 2.5) * t * t * t * t;
  };
  auto w = [ramp_primitive](double u) {
    double raw;
    if (u < delta)
      raw = delta * ramp_primitive(u / delta);
    else if (u <= 1.0 - delta)
      raw = 0.5 * delta + (u - delta);
    else
      raw = (1.0 - delta) - delta * ramp_primitive((1.0 - u) / delta);
    return raw / (1.0 - delta);
  };
  auto psi = [w](double u) { return 2.0 * kPi / 3.0 - 4.0 * kPi / 3.0 * w(u); };
  const double span = integrate_direction(psi, 1.0, 4096).x();
  const double lambda = 2.0 / span;
  auto top = [psi, lambda](double x) {
    const Vec2 v = integrate_direction(psi, x, 512);
    return Vec2(-1.0 + lambda * v.x(), lambda * v.y());
  };
  auto bottom = [psi, lambda](double x) {
    const Vec2 v = integrate_direction(psi, x, 512);
    return Vec2(-1.0 + lambda * v.x(), -lambda * v.y());
  };
  s.topology = theta_topology();
  s.primitives.push_back(std::make_shared<AnalyticCurve>(top));
  s.primitives.push_back(std::make_shared<AnalyticCurve>(bottom));
  s.primitives.push_back(std::make_shared<Segment>(Vec2(-1.0, 0.0), Vec2(1.0, 0.0)));
  s.params.mu = 0.2;
  s.params.grid_n = 64;
  s.params.dt = 1e-4;
  s.params.t_end = 0.05;
  s.params.tol.adm_curvature = 0.05;
  s.params.tol.adm_third_order = 0.5;
  return s;
}

Scene theta_eps(double eps) {
  if (!(eps > 0.0) || eps >= 1.0)
    throw SceneError(fmt::format("theta_eps needs 0 < eps < 1, got {}", eps));
  Scene s;
  s.name = "theta_eps";
  // Two unit-radius arcs of length eps bulging to either side of the short
  // vertical chord between the junctions. This is the degenerate-theta family:
  // its energy 2 eps + mu (2 eps + sqrt(2) sqrt(1 - cos eps)) tends to the
  // infimum as eps -> 0. The junction conditions are violated by design (the
  // arcs carry curvature 1 into the junctions), so the admission thresholds
  // are loose for this scene and the flow is expected to end in an
  // angle-degeneracy verdict rather than reach t_end.
  const double c = std::cos(eps / 2.0);
  const double sn = std::sin(eps / 2.0);
  const Vec2 j1(0.0, -sn), j2(0.0, sn);
  s.topology = theta_topology();
  s.primitives.push_back(std::make_shared<Arc>(Vec2(-c, 0.0), 1.0, -eps / 2.0, eps / 2.0));
  s.primitives.push_back(
      std::make_shared<Arc>(Vec2(c, 0.0), 1.0, kPi + eps / 2.0, kPi - eps / 2.0));
  s.primitives.push_back(std::make_shared<Segment>(j1, j2));
  s.params.mu = 2.0;
  s.params.grid_n = 128;
  s.params.dt = 1e-3;
  s.params.t_end = 1.0;
  s.params.tol.adm_curvature = 2.0;
  s.params.tol.adm_third_order = 10.0;
  return s;
}

Scene circle_scene(double radius) {
  if (!(radius > 0.0)) throw SceneError(fmt::format("circle needs radius > 0, got {}", radius));
  Scene s;
  s.name = "circle";
  s.topology = closed_curve_topology();
  s.primitives.push_back(std::make_shared<Arc>(Vec2::Zero(), radius, 0.0, 2.0 * kPi));
  s.params.mu = 4.0;
  s.params.grid_n = 128;
  s.params.dt = 1e-4;
  // The ODE radius r' = 1/r^3 - mu/r starting at r = 2 needs t ~ 0.8 to settle
  // at the equilibrium mu^{-1/2} = 0.5; t_end = 1 leaves the default run there.
  s.params.t_end = 1.0;
  return s;
}

Scene segment_scene() {
  Scene s;
  s.name = "segment";
  const Vec2 a(0.0, 0.0), b(1.0, 0.0);
  s.topology = segment_topology(a, b);
  s.primitives.push_back(std::make_shared<Segment>(a, b));
  s.params.mu = 0.2;
  s.params.grid_n = 64;
  s.params.dt = 1e-3;
  s.params.t_end = 1.0;
  return s;
}

Scene bad_triod() {
  Scene s;
  s.name = "bad_triod_90";
  const Vec2 o = Vec2::Zero();
  const std::array<Vec2, 3> tips = {Vec2(1.0, 0.0), Vec2(0.0, 1.0), Vec2(-1.0, 0.0)};
  s.topology = triod_topology(tips[0], tips[1], tips[2]);
  for (const auto& p : tips) s.primitives.push_back(std::make_shared<Segment>(o, p));
  s.params.mu = 0.2;
  s.params.grid_n = 64;
  s.params.dt = 1e-3;
  s.params.t_end = 1.0;
  return s;
}

}  // namespace

Scene make_scene(const std::string& name, double arg) {
  if (name == "steiner_triod") return steiner_triod();
  if (name == "perturbed_triod") return perturbed_triod(arg > 0.0 ? arg : 0.02);
  if (name == "theta_symmetric") return theta_symmetric();
  if (name == "theta_eps") return theta_eps(arg > 0.0 ? arg : 0.2);
  if (name == "circle") return circle_scene(arg > 0.0 ? arg : 2.0);
  if (name == "segment") return segment_scene();
  if (name == "bad_triod_90") return bad_triod();
  throw SceneError(fmt::format("unknown scene '{}'", name));
}

std::vector<std::string> builtin_scene_names() {
  return {"steiner_triod", "perturbed_triod", "theta_symmetric", "theta_eps",
          "circle",        "segment",         "bad_triod_90"};
}

double theta_eps_energy(double eps, double mu) {
  return 2.0 * eps + mu * (2.0 * eps + std::sqrt(2.0) * std::sqrt(1.0 - std::cos(eps)));
}

}  // namespace elastica
