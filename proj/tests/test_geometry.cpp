#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "elastica/geometry.hpp"
#include "helpers.hpp"

using namespace elastica;
using namespace elastica::testutil;

TEST_CASE("straight segment: derivatives, curvatures and velocities vanish at roundoff") {
  // differencing exactly-linear samples leaves only weight roundoff, which
  // grows like n^order for the higher-order rows
  const auto state = open_curve_state([](double x) { return Vec2(x, 0.0); }, 32);
  const auto g = compute_curve_geometry(state, 0);

  for (int j = 0; j <= 32; ++j) {
    CHECK((g.gamma_x[j] - Vec2(1.0, 0.0)).norm() < 1e-12);
    CHECK(g.gamma_xx[j].norm() < 1e-10);
    CHECK(g.gamma_xxx[j].norm() < 1e-8);
    CHECK(g.gamma_xxxx[j].norm() < 1e-6);
    CHECK(std::abs(g.k[j]) < 1e-10);
    CHECK((g.tau[j] - Vec2(1.0, 0.0)).norm() < 1e-12);
    CHECK((g.nu[j] - Vec2(0.0, 1.0)).norm() < 1e-12);
  }
  const auto A = g.normal_velocity(0.2);
  const auto T = g.tangential_velocity(0.2);
  for (int j = 0; j <= 32; ++j) {
    CHECK(std::abs(A[j]) < 1e-6);
    CHECK(std::abs(T[j]) < 1e-6);
  }
  CHECK(g.length == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(elastic_energy(state, 0.2) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("quadratic curve: second parameter derivative is exact") {
  const auto state = open_curve_state([](double x) { return Vec2(x, x * x); }, 16);
  const auto g = compute_curve_geometry(state, 0);
  for (int j = 0; j <= 16; ++j) {
    CHECK(g.gamma_xx[j].x() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(g.gamma_xx[j].y() == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("parabola vertex curvature equals 2a") {
  const double a = 0.7;
  const int n = 64;
  const auto state =
      open_curve_state([a](double x) { return Vec2(x - 0.5, a * (x - 0.5) * (x - 0.5)); }, n);
  const auto g = compute_curve_geometry(state, 0);
  // vertex sits at the middle node; the curve bends toward +y, and with
  // tau ~ +x the normal is +y, so k > 0
  CHECK(g.k[n / 2] == doctest::Approx(2.0 * a).epsilon(1e-6));
}

TEST_CASE("counter-clockwise circle: frame, curvature and fourth derivative") {
  const double r = 2.0;
  const int n = 64;
  const auto state = circle_state(r, n);
  const auto g = compute_curve_geometry(state, 0);
  const double w = 2.0 * M_PI;

  for (int j = 0; j < n; ++j) {
    CHECK(std::abs(g.tau[j].norm() - 1.0) < 1e-12);
    CHECK(std::abs(g.tau[j].dot(g.nu[j])) < 1e-12);
    // nu is tau rotated CCW, pointing into the circle
    CHECK(g.nu[j] == rot90(g.tau[j]));
    const Vec2 inward = -state.point(0, j).normalized();
    CHECK((g.nu[j] - inward).norm() < 1e-4);

    CHECK(g.k[j] == doctest::Approx(1.0 / r).epsilon(1e-5));
    CHECK(std::abs(g.k_s[j]) < 1e-6);
    CHECK(std::abs(g.k_ss[j]) < 1e-3);

    // gamma_xxxx = r w^4 (cos, sin) radially outward
    const Vec2 expected = state.point(0, j) * (w * w * w * w);
    CHECK((g.gamma_xxxx[j] - expected).norm() < 1e-3 * expected.norm());
  }

  // 4th-order truncation at n=64 sits near 3e-6 relative
  CHECK(g.length == doctest::Approx(2.0 * M_PI * r).epsilon(1e-5));
  // E = 2 pi (1/r + mu r) for a circle
  CHECK(elastic_energy(state, 1.0) ==
        doctest::Approx(2.0 * M_PI * (1.0 / r + 1.0 * r)).epsilon(1e-5));
  CHECK(elastic_energy(state, 1.0) == doctest::Approx(5.0 * M_PI).epsilon(1e-5));
}

TEST_CASE("fourth derivative converges at the interior stencil order") {
  auto err = [](int n) {
    const auto g = compute_curve_geometry(circle_state(1.0, n), 0);
    const double w4 = std::pow(2.0 * M_PI, 4);
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(g.gamma_xxxx[j].norm() - w4));
    return worst;
  };
  CHECK(err(32) / err(64) > 12.0);
}

TEST_CASE("normal velocity on circles") {
  SUBCASE("r=1, mu=4: |A| = 3 uniformly") {
    const auto g = compute_curve_geometry(circle_state(1.0, 64), 0);
    const auto A = g.normal_velocity(4.0);
    // k = +1, k_ss ~ 0: A = k^3 - mu k = -3
    for (double a : A) CHECK(a == doctest::Approx(-3.0).epsilon(1e-4));
  }
  SUBCASE("equilibrium radius r = mu^{-1/2}: A ~ 0") {
    const double mu = 4.0;
    const auto g = compute_curve_geometry(circle_state(1.0 / std::sqrt(mu), 128), 0);
    for (double a : g.normal_velocity(mu)) CHECK(std::abs(a) < 1e-3);
  }
}

TEST_CASE("tangential velocity vanishes on constant-speed circles") {
  const auto g = compute_curve_geometry(circle_state(1.5, 64), 0);
  for (double t : g.tangential_velocity(0.7)) CHECK(std::abs(t) < 1e-4);
}

TEST_CASE("tangential velocity on a non-uniformly parametrized segment matches calculus") {
  // gamma(x) = (f(x), 0) with f(x) = (0.5 + 0.5 x)^2: every term of the
  // velocity formula lies along tau = (1,0), A = 0, and
  //   T = 2 f''''/f'^4 - 20 f''' f''/f'^5 + 30 f''^3/f'^6 - mu f''/f'^2
  // with f' = 0.5 + 0.5 x, f'' = 0.5, f''' = f'''' = 0.
  const double mu = 0.3;
  const int n = 128;
  const auto state =
      open_curve_state([](double x) { return Vec2(std::pow(0.5 + 0.5 * x, 2), 0.0); }, n);
  const auto g = compute_curve_geometry(state, 0);
  const auto A = g.normal_velocity(mu);
  const auto T = g.tangential_velocity(mu);

  for (int j = 0; j <= n; ++j) {
    const double fp = 0.5 + 0.5 * double(j) / n;
    const double oracle =
        30.0 * 0.125 / std::pow(fp, 6) - mu * 0.5 / (fp * fp);
    CHECK(std::abs(A[j]) < 1e-9);
    CHECK(T[j] == doctest::Approx(oracle).epsilon(1e-6));
  }

  // velocity_vector agrees with A nu + T tau at every node
  const auto V = g.velocity_vector(mu);
  for (int j = 0; j <= n; ++j) {
    const Vec2 recomposed = A[j] * g.nu[j] + T[j] * g.tau[j];
    CHECK((V[j] - recomposed).norm() < 1e-9 * (1.0 + V[j].norm()));
  }
}

TEST_CASE("velocity decomposition against the orthonormal frame") {
  // T is the exact tau-projection of the same velocity arrays, so
  // V = <V,tau> tau + <V,nu> nu holds to roundoff at every node.  A, however,
  // is an independent discretization (nested arclength derivatives of k), so
  // <V,nu> matches A only at truncation level, and only away from the
  // one-sided boundary windows where nested differencing loses accuracy.
  const double mu = 0.2;
  auto wiggly = [](double x) {
    return Vec2(x, 0.1 * std::sin(2.0 * M_PI * x) + 0.05 * x * x);
  };
  auto normal_gap = [&](int n) {
    const auto g = compute_curve_geometry(open_curve_state(wiggly, n), 0);
    const auto A = g.normal_velocity(mu);
    const auto V = g.velocity_vector(mu);
    double worst = 0.0;
    for (int j = 5; j <= n - 5; ++j)
      worst = std::max(worst, std::abs(V[j].dot(g.nu[j]) - A[j]));
    return worst;
  };

  SUBCASE("tau projection and frame recomposition are exact") {
    const int n = 96;
    const auto g = compute_curve_geometry(open_curve_state(wiggly, n), 0);
    const auto T = g.tangential_velocity(mu);
    const auto V = g.velocity_vector(mu);
    for (int j = 0; j <= n; ++j) {
      CHECK(std::abs(V[j].dot(g.tau[j]) - T[j]) < 1e-12 * (1.0 + V[j].norm()));
      const Vec2 recomposed = V[j].dot(g.nu[j]) * g.nu[j] + V[j].dot(g.tau[j]) * g.tau[j];
      CHECK((V[j] - recomposed).norm() < 1e-12 * (1.0 + V[j].norm()));
    }
  }

  SUBCASE("normal projection matches A at truncation, 4th-order in h") {
    // measured: 0.999 at n=64, 0.0656 at n=128 with |V| ~ 6.4e2
    CHECK(normal_gap(128) < 0.2);
    CHECK(normal_gap(64) / normal_gap(128) > 10.0);
  }

  SUBCASE("closed perturbed circle: all-centered stencils, clean 4th order") {
    auto blob = [](double x) {
      const double a = 2.0 * M_PI * x;
      const double rad = 1.0 + 0.05 * std::cos(a) + 0.03 * std::sin(2.0 * a);
      return Vec2(rad * std::cos(a), rad * std::sin(a));
    };
    auto gap = [&](int n) {
      const auto g = compute_curve_geometry(closed_curve_state(blob, n), 0);
      const auto A = g.normal_velocity(0.9);
      const auto V = g.velocity_vector(0.9);
      double worst = 0.0;
      for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(V[j].dot(g.nu[j]) - A[j]));
      return worst;
    };
    CHECK(gap(128) < 5e-4);  // measured 1.07e-4
    CHECK(gap(64) / gap(128) > 12.0);
  }
}

TEST_CASE("curvature evolution right side: two algebraic forms agree to 1e-10") {
  const int n = 64;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double c1 = 0.08 * U(rng), s1 = 0.06 * U(rng), c3 = 0.04 * U(rng);
  const auto state = closed_curve_state(
      [&](double x) {
        const double a = 2.0 * M_PI * x;
        const double rad = 1.0 + c1 * std::cos(a) + s1 * std::sin(a) + c3 * std::cos(3.0 * a);
        return Vec2(rad * std::cos(a), rad * std::sin(a));
      },
      n);
  const auto g = compute_curve_geometry(state, 0);
  const double mu = 0.9;
  const auto f1 = g.curvature_time_rhs_geometric(mu);
  const auto f2 = g.curvature_time_rhs_expanded(mu);
  double scale = 1.0;
  for (double v : f1) scale = std::max(scale, std::abs(v));
  for (int j = 0; j < n; ++j) CHECK(std::abs(f1[j] - f2[j]) < 1e-10 * scale);
}

TEST_CASE("curvature evolution right side on circles reduces to -k^5 + mu k^3") {
  SUBCASE("generic radius") {
    const double r = 1.3, mu = 2.0;
    const auto g = compute_curve_geometry(circle_state(r, 128), 0);
    const double k = 1.0 / r;
    const double oracle = -std::pow(k, 5) + mu * std::pow(k, 3);
    for (double v : g.curvature_time_rhs_expanded(mu))
      CHECK(v == doctest::Approx(oracle).epsilon(1e-3));
  }
  SUBCASE("equilibrium radius gives zero") {
    const double mu = 4.0;
    const auto g = compute_curve_geometry(circle_state(1.0 / std::sqrt(mu), 128), 0);
    for (double v : g.curvature_time_rhs_expanded(mu)) CHECK(std::abs(v) < 1e-2);
  }
}

TEST_CASE("geometric scalars are rigid-motion invariant, frame covariant") {
  const int n = 64;
  const auto state = open_curve_state(
      [](double x) { return Vec2(x, 0.2 * std::sin(2.0 * M_PI * x)); }, n);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double angle = 2.5 * U(rng);
  const Eigen::Matrix2d R = rotation(angle);
  const Vec2 shift(3.0 * U(rng), -2.0 * U(rng));
  const auto moved = transformed_state(state, R, shift);

  const auto g0 = compute_curve_geometry(state, 0);
  const auto g1 = compute_curve_geometry(moved, 0);
  const double mu = 0.5;
  const auto A0 = g0.normal_velocity(mu), A1 = g1.normal_velocity(mu);
  const auto T0 = g0.tangential_velocity(mu), T1 = g1.tangential_velocity(mu);

  for (int j = 0; j <= n; ++j) {
    CHECK(std::abs(g0.k[j] - g1.k[j]) < 1e-10);
    CHECK(std::abs(g0.k_s[j] - g1.k_s[j]) < 1e-9);
    CHECK(std::abs(g0.k_ss[j] - g1.k_ss[j]) < 1e-7);
    CHECK(std::abs(g0.speed[j] - g1.speed[j]) < 1e-10);
    CHECK((Vec2(R * g0.tau[j]) - g1.tau[j]).norm() < 1e-12);
    CHECK((Vec2(R * g0.nu[j]) - g1.nu[j]).norm() < 1e-12);
    CHECK(std::abs(A0[j] - A1[j]) < 1e-6);
    CHECK(std::abs(T0[j] - T1[j]) < 1e-6);
  }
  CHECK(std::abs(elastic_energy(state, mu) - elastic_energy(moved, mu)) < 1e-10);
}

TEST_CASE("energy dominates mu times total length") {
  const double mu = 0.8;
  for (int n : {32, 64}) {
    const auto circle = circle_state(1.2, n);
    const auto gc = compute_curve_geometry(circle, 0);
    CHECK(elastic_energy(circle, mu) >= mu * gc.length);

    const auto wig = open_curve_state(
        [](double x) { return Vec2(x, 0.3 * std::sin(3.0 * x)); }, n);
    const auto gw = compute_curve_geometry(wig, 0);
    CHECK(elastic_energy(wig, mu) >= mu * gw.length);
  }
}

TEST_CASE("quadrature weights sum to the curve length") {
  const auto state = circle_state(0.8, 48);
  const auto g = compute_curve_geometry(state, 0);
  double sum = 0.0;
  for (double w : g.ds) sum += w;
  CHECK(sum == doctest::Approx(g.length).epsilon(1e-14));
}

TEST_CASE("boundary k_s matches the differentiated-curvature form on smooth data") {
  // two independent discretizations of the same quantity agree at truncation
  // level wherever the data is smooth
  const int n = 128;
  const auto state = open_curve_state(
      [](double x) { return Vec2(x, 0.1 * std::sin(2.0 * M_PI * x)); }, n);
  const auto g = compute_curve_geometry(state, 0);
  for (int j : {3, n / 3, n / 2, n - 3})
    CHECK(g.boundary_k_s(j) == doctest::Approx(g.k_s[j]).epsilon(1e-3));
}
