#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elastica/monitors.hpp"
#include "elastica/scenes.hpp"
#include "elastica/solver.hpp"
#include "helpers.hpp"

using namespace elastica;
using namespace elastica::testutil;

TEST_CASE("stationary network stays put for 100 implicit steps") {
  const auto scene = make_scene("steiner_triod");
  auto state = scene.build();
  const auto initial = state;
  StepConfig cfg{scene.params.dt, scene.params.mu,
                 1e-10 * elastic_energy(state, scene.params.mu), scene.params.tol};
  for (int i = 0; i < 100; ++i) {
    const auto r = step(state, cfg);
    CHECK(r.halvings == 0);
    CHECK(r.dt_used == cfg.dt);
    state = r.state;
  }
  CHECK(max_node_distance(initial, state) < 1e-9);  // measured 6.9e-11
  CHECK(state.time() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("shrinking circle tracks the radius ODE through run()") {
  RunConfig rc;
  rc.params.mu = 4.0;
  rc.params.grid_n = 128;
  rc.params.dt = 1e-4;
  rc.params.t_end = 0.05;
  const auto res = run(circle_state(1.0, 128), rc);

  CHECK(res.verdict == RunVerdict::ReachedTEnd);
  CHECK(res.accepted_steps == 500);
  CHECK(res.series.size() == 501);
  const double oracle = circle_radius_ode(1.0, 4.0, 0.05);
  CHECK(mean_radius(res.final_state) == doctest::Approx(oracle).epsilon(1e-3));
  CHECK(radius_spread(res.final_state) < 1e-6);

  // energy is non-increasing along the whole series
  std::vector<double> energies;
  for (const auto& row : res.series) energies.push_back(row.energy);
  CHECK_FALSE(check_energy_series(energies, 1e-10 * res.initial_energy).has_value());
}

TEST_CASE("implicit and explicit integrators agree at tiny dt") {
  const double dt = 1e-7, mu = 4.0;
  auto explicit_state = circle_state(1.0, 64);
  auto implicit_state = explicit_state;
  StepConfig cfg{dt, mu, 1e-6, Tolerances{}};
  for (int i = 0; i < 10; ++i) {
    explicit_state = step_explicit(explicit_state, mu, dt);
    implicit_state = step(implicit_state, cfg).state;
  }
  // both are consistent discretizations of the same motion; the O(dt^2)
  // one-step gap accumulates to ~7.5e-13 over ten steps
  CHECK(max_node_distance(explicit_state, implicit_state) < 1e-10);
}

TEST_CASE("explicit stepping blows up past its stability bound") {
  // dt = 1e-3 is far above the ~5e-6 fourth-order stability limit at n=64
  auto state = circle_state(1.0, 64);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 50; ++i) state = step_explicit(state, 4.0, 1e-3);
      }(),
      InstabilityError);
}

TEST_CASE("runs are deterministic") {
  const auto scene = make_scene("perturbed_triod");
  RunConfig rc;
  rc.params = scene.params;
  rc.params.t_end = 0.02;
  const auto a = run(scene.build(), rc);
  const auto b = run(scene.build(), rc);

  REQUIRE(a.series.size() == b.series.size());
  for (size_t i = 0; i < a.series.size(); ++i) {
    CHECK(a.series[i].energy == b.series[i].energy);
    CHECK(a.series[i].max_third_order_residual == b.series[i].max_third_order_residual);
  }
  CHECK(max_node_distance(a.final_state, b.final_state) == 0.0);
}

TEST_CASE("stepping commutes with rigid motions") {
  const auto scene = make_scene("perturbed_triod");
  auto plain = scene.build();
  const Eigen::Matrix2d R = rotation(0.83);
  const Vec2 shift(1.5, -2.25);
  auto moved = transformed_state(plain, R, shift);

  StepConfig cfg{scene.params.dt, scene.params.mu, 1e-6, scene.params.tol};
  for (int i = 0; i < 50; ++i) {
    plain = step(plain, cfg).state;
    moved = step(moved, cfg).state;
  }
  // identical up to solver roundoff amplified over 50 steps (measured 3.8e-9)
  CHECK(max_node_distance(transformed_state(plain, R, shift), moved) < 1e-7);
}

TEST_CASE("run verdicts") {
  SUBCASE("inadmissible input is rejected up front") {
    const auto scene = make_scene("bad_triod_90");
    RunConfig rc;
    rc.params = scene.params;
    const auto res = run(scene.build(), rc);
    CHECK(res.verdict == RunVerdict::Inadmissible);
    CHECK(res.accepted_steps == 0);
    CHECK_FALSE(res.message.empty());
  }

  SUBCASE("unsatisfiable post-step tolerance ends in solver failure") {
    const auto scene = make_scene("perturbed_triod");
    RunConfig rc;
    rc.params = scene.params;
    rc.params.t_end = 0.01;
    rc.params.tol.step_curvature = 1e-18;  // below solver roundoff, unreachable
    const auto res = run(scene.build(), rc);
    CHECK(res.verdict == RunVerdict::SolverFailure);
    CHECK(res.message.find("halvings") != std::string::npos);
  }

  SUBCASE("angle threshold trips the degeneracy verdict") {
    const auto scene = make_scene("theta_symmetric");
    RunConfig rc;
    rc.params = scene.params;
    rc.params.t_end = 0.01;
    rc.params.min_sin_angle_threshold = 0.99;  // 120-degree junctions sit at 0.866
    const auto res = run(scene.build(), rc);
    CHECK(res.verdict == RunVerdict::AngleDegeneracy);
  }

  SUBCASE("length threshold trips the collapse verdict") {
    RunConfig rc;
    rc.params.mu = 4.0;
    rc.params.grid_n = 64;
    rc.params.dt = 1e-4;
    rc.params.t_end = 0.1;
    rc.params.min_length_threshold = 0.95 * 2.0 * M_PI;
    const auto res = run(circle_state(1.0, 64), rc);
    CHECK(res.verdict == RunVerdict::LengthCollapse);
    // r' = -3 at r = 1: length crosses 0.95 L0 near t = 0.05/3
    CHECK(res.final_state.time() == doctest::Approx(0.05 / 3.0).epsilon(0.05));
    CHECK(res.final_state.time() < 0.1);
  }
}

TEST_CASE("frame cadence accounting") {
  const auto scene = make_scene("perturbed_triod");
  RunConfig rc;
  rc.params = scene.params;
  rc.params.t_end = 0.01;  // 10 steps at dt = 1e-3

  SUBCASE("default keeps first and last") {
    const auto res = run(scene.build(), rc);
    CHECK(res.accepted_steps == 10);
    CHECK(res.frames.size() == 2);
    CHECK(res.frames.front().time() == 0.0);
    CHECK(res.frames.back().time() == doctest::Approx(0.01));
  }

  SUBCASE("cadence snapshots land every k accepted steps") {
    rc.frames_every = 2;
    const auto res = run(scene.build(), rc);
    CHECK(res.accepted_steps == 10);
    CHECK(res.frames.size() == 6);  // steps 0,2,4,6,8,10
  }
}
