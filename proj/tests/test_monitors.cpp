#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elastica/admissibility.hpp"
#include "elastica/monitors.hpp"
#include "elastica/scenes.hpp"
#include "elastica/solver.hpp"
#include "helpers.hpp"

using namespace elastica;
using namespace elastica::testutil;

TEST_CASE("single-state report on the straight 120-degree triod") {
  const auto scene = make_scene("steiner_triod");
  const auto state = scene.build();
  const auto rep = monitor_state(state, scene.params.mu, scene.params);

  // three unit legs, zero curvature: E = 3 mu, L = 3
  CHECK(rep.energy == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(rep.total_length == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE(rep.curve_lengths.size() == 3);
  for (double l : rep.curve_lengths) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.k_l2 < 1e-8);
  CHECK(rep.ks_l2 < 1e-8);
  CHECK(rep.kss_l2 < 1e-6);
  CHECK(rep.min_speed == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.max_speed == doctest::Approx(1.0).epsilon(1e-10));

  CHECK(rep.concurrency_gap == 0.0);
  CHECK(rep.max_junction_abs_k < 1e-10);
  CHECK(rep.max_endpoint_abs_k < 1e-10);
  CHECK(rep.max_third_order_residual < 1e-10);
  CHECK(rep.min_rho_hat == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(rep.min_det_m == doctest::Approx(9.0 / 8.0).epsilon(1e-12));

  // two-state fields stay unset without a predecessor
  CHECK(std::isnan(rep.dt));
  CHECK(std::isnan(rep.energy_decrease_rate));
  CHECK(std::isnan(rep.dissipation_quadrature));
  CHECK(std::isnan(rep.curvature_evolution_residual));
  CHECK(std::isnan(rep.junction_kinematics_residual));
  CHECK_FALSE(rep.length_collapse);
  CHECK_FALSE(rep.angle_degeneracy);
}

TEST_CASE("reports are pure functions of the state") {
  const auto scene = make_scene("perturbed_triod");
  const auto state = scene.build();
  const auto a = monitor_state(state, scene.params.mu, scene.params);
  const auto b = monitor_state(state, scene.params.mu, scene.params);
  CHECK(a.energy == b.energy);
  CHECK(a.k_l2 == b.k_l2);
  CHECK(a.kss_l2 == b.kss_l2);
  CHECK(a.max_third_order_residual == b.max_third_order_residual);
  CHECK(a.min_det_m == b.min_det_m);
}

TEST_CASE("energy decrease rate matches the dissipation quadrature on a circle") {
  const auto prev = circle_state(1.0, 128);
  StepConfig cfg{1e-4, 4.0, 1e-6, Tolerances{}};
  const auto next = step(prev, cfg).state;

  auto rep = monitor_state(next, 4.0, FlowParams{});
  monitor_step(rep, prev, next, 4.0, 1e-4);

  CHECK(rep.dt == 1e-4);
  // A = -3 uniformly: int A^2 ds = 9 * 2 pi (shrinking radius), ~56.5
  CHECK(rep.dissipation_quadrature == doctest::Approx(9.0 * 2.0 * M_PI).epsilon(2e-2));
  // first-order step: rate and quadrature agree to O(dt), measured 2.5e-4
  CHECK(rep.energy_decrease_rate ==
        doctest::Approx(rep.dissipation_quadrature).epsilon(1e-2));
  CHECK(rep.energy_decrease_rate > 0.0);
  // closed curve: no junction kinematics
  CHECK(std::isnan(rep.junction_kinematics_residual));
  CHECK(std::isfinite(rep.curvature_evolution_residual));
  CHECK(std::isfinite(rep.ds_evolution_residual));
}

TEST_CASE("curvature evolution residual halves under (dt,h) refinement") {
  auto circle_pair = [](int n, double dt) {
    const auto prev = circle_state(1.0, n);
    StepConfig cfg{dt, 4.0, 1e-6, Tolerances{}};
    const auto next = step(prev, cfg).state;
    return curvature_evolution_residual(prev, next, 4.0, dt);
  };
  const double c64 = circle_pair(64, 1e-4);
  const double c128 = circle_pair(128, 5e-5);
  CHECK(c64 / c128 > 1.8);  // measured ratio 1.94

  auto triod_pair = [](int n, double dt) {
    auto scene = make_scene("perturbed_triod");
    scene.params.grid_n = n;
    RunConfig rc;
    rc.params = scene.params;
    rc.params.dt = dt;
    rc.params.t_end = 0.001;  // let the unresolvable initial burst decay
    const auto res = run(scene.build(), rc);
    StepConfig cfg{dt, scene.params.mu, 1e-8 * res.initial_energy, scene.params.tol};
    const auto next = step(res.final_state, cfg).state;
    return curvature_evolution_residual(res.final_state, next, scene.params.mu, dt);
  };
  const double t64 = triod_pair(64, 1e-4);
  const double t128 = triod_pair(128, 5e-5);
  CHECK(t64 / t128 > 1.8);  // measured ratio 2.72
}

TEST_CASE("length evolution residual shrinks under refinement") {
  auto pair = [](int n, double dt) {
    const auto prev = circle_state(1.0, n);
    StepConfig cfg{dt, 4.0, 1e-6, Tolerances{}};
    const auto next = step(prev, cfg).state;
    return ds_evolution_residual(prev, next, 4.0, dt);
  };
  const double r64 = pair(64, 1e-4);
  const double r128 = pair(128, 5e-5);
  CHECK(r64 / r128 > 1.5);  // measured 1.94
  CHECK(r128 < 1e-2);
}

TEST_CASE("junction kinematics residual") {
  SUBCASE("vanishes on a stationary network") {
    const auto scene = make_scene("steiner_triod");
    const auto prev = scene.build();
    StepConfig cfg{1e-3, scene.params.mu, 1e-6, scene.params.tol};
    const auto next = step(prev, cfg).state;
    CHECK(junction_kinematics_check(prev, next, scene.params.mu, 1e-3) < 1e-8);
  }

  SUBCASE("shrinks under refinement on the perturbed triod") {
    auto pair = [](int n, double dt) {
      auto scene = make_scene("perturbed_triod");
      scene.params.grid_n = n;
      const auto prev = make_admissible(scene.build(), scene.params.mu, scene.params.tol);
      StepConfig cfg{dt, scene.params.mu, 1e-6, scene.params.tol};
      const auto next = step(prev, cfg).state;
      return junction_kinematics_check(prev, next, scene.params.mu, dt);
    };
    const double r64 = pair(64, 1e-4);
    const double r128 = pair(128, 5e-5);
    CHECK(r64 / r128 > 2.0);  // measured 3.5
  }
}

TEST_CASE("energy and curvature bounds hold along a run") {
  const auto scene = make_scene("perturbed_triod");
  RunConfig rc;
  rc.params = scene.params;
  rc.params.t_end = 0.02;
  const auto res = run(scene.build(), rc);

  for (const auto& row : res.series) {
    const auto b = check_bounds(row, res.initial_energy, scene.params.mu);
    CHECK(b.ok);
    CHECK(b.k_sq <= res.initial_energy * 1.01);
    CHECK(b.length <= res.initial_energy / scene.params.mu * 1.01);
  }
}

TEST_CASE("bounds checker flags violations") {
  MonitorReport rep;
  rep.k_l2 = 2.0;  // k_sq = 4 > E0
  rep.total_length = 1.0;
  CHECK_FALSE(check_bounds(rep, 1.0, 1.0).ok);

  rep.k_l2 = 0.1;
  rep.total_length = 10.0;  // > E0/mu
  CHECK_FALSE(check_bounds(rep, 1.0, 1.0).ok);

  rep.total_length = 0.9;
  CHECK(check_bounds(rep, 1.0, 1.0).ok);
}

TEST_CASE("energy series checker pinpoints the first rise") {
  CHECK_FALSE(check_energy_series({1.0, 0.8, 0.8, 0.5}, 1e-12).has_value());
  const auto hit = check_energy_series({1.0, 0.9, 0.9 + 1e-6, 0.5}, 1e-9);
  REQUIRE(hit.has_value());
  CHECK(*hit == 2);
  // rises below the tolerance pass
  CHECK_FALSE(check_energy_series({1.0, 0.9, 0.9 + 1e-13}, 1e-12).has_value());
}

TEST_CASE("singularity thresholds") {
  // collapse is judged per curve: one arm shrinking to nothing is a
  // singularity even while the rest of the network keeps its length
  MonitorReport rep;
  rep.total_length = 3.0;
  rep.curve_lengths = {1.4, 1.4, 0.2};
  rep.min_rho_hat = 0.86;

  SUBCASE("healthy state raises no flags") {
    const auto v = singularity_verdict(rep, 0.1, 0.1);
    CHECK_FALSE(v.any());
  }
  SUBCASE("one short curve flags collapse") {
    const auto v = singularity_verdict(rep, 0.5, 0.1);
    CHECK(v.length_collapse);
    CHECK_FALSE(v.angle_degeneracy);
  }
  SUBCASE("flat angles flag degeneracy") {
    rep.min_rho_hat = 0.05;
    const auto v = singularity_verdict(rep, 0.1, 0.1);
    CHECK(v.angle_degeneracy);
    CHECK_FALSE(v.length_collapse);
  }
  SUBCASE("no junctions means no angle flag") {
    rep.min_rho_hat = std::numeric_limits<double>::quiet_NaN();
    const auto v = singularity_verdict(rep, 0.1, 0.1);
    CHECK_FALSE(v.angle_degeneracy);
  }
}

TEST_CASE("kss growth series") {
  const auto scene = make_scene("steiner_triod");
  RunConfig rc;
  rc.params = scene.params;
  rc.params.t_end = 0.01;
  const auto res = run(scene.build(), rc);
  const auto rates = kss_growth_series(res.series);
  CHECK(rates.size() == res.series.size() - 1);
  // stationary straight network: ||k_ss||^2 stays at roundoff level
  for (double r : rates) CHECK(std::abs(r) < 1e-10);

  const auto pscene = make_scene("perturbed_triod");
  RunConfig prc;
  prc.params = pscene.params;
  prc.params.t_end = 0.01;
  const auto pres = run(pscene.build(), prc);
  for (double r : kss_growth_series(pres.series)) CHECK(std::isfinite(r));
}

TEST_CASE("mismatched grids are rejected") {
  const auto a = circle_state(1.0, 64);
  const auto b = circle_state(1.0, 128);
  CHECK_THROWS_AS(curvature_evolution_residual(a, b, 1.0, 1e-3), GridMismatch);
  MonitorReport rep;
  CHECK_THROWS_AS(monitor_step(rep, a, b, 1.0, 1e-3), GridMismatch);
}

TEST_CASE("monitor thresholds flow into the state report flags") {
  const auto scene = make_scene("steiner_triod");
  const auto state = scene.build();
  FlowParams params = scene.params;
  params.min_length_threshold = 10.0;  // total length is 3
  const auto rep = monitor_state(state, params.mu, params);
  CHECK(rep.length_collapse);
}
