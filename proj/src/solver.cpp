#include "elastica/solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "elastica/admissibility.hpp"
#include "elastica/linear_step.hpp"

namespace elastica {

namespace {

double nonlinear_third_order_residual(const NetworkState& state,
                                      const std::vector<CurveGeometry>& geo,
                                      double mu) {
  const int n = state.grid_n();
  double worst = 0.0;
  for (const auto& junction : state.topology().junctions) {
    Vec2 sum = Vec2::Zero();
    for (const auto& end : junction.ends) {
      const auto& g = geo[end.curve];
      const int idx = end.end == CurveEnd::Start ? 0 : n;
      const double sigma = end.end == CurveEnd::Start ? 1.0 : -1.0;
      sum += sigma * (2.0 * g.boundary_k_s(idx) * g.nu[idx] - mu * g.tau[idx]);
    }
    worst = std::max(worst, sum.norm());
  }
  return worst;
}

double max_boundary_abs_k(const NetworkState& state,
                          const std::vector<CurveGeometry>& geo) {
  const int n = state.grid_n();
  double worst = 0.0;
  auto visit = [&](EndRef end) {
    const int idx = end.end == CurveEnd::Start ? 0 : n;
    worst = std::max(worst, std::abs(geo[end.curve].k[idx]));
  };
  for (const auto& junction : state.topology().junctions)
    for (const auto& end : junction.ends) visit(end);
  for (const auto& ep : state.topology().endpoints) visit(ep.end);
  return worst;
}

double min_discrete_speed(const std::vector<CurveGeometry>& geo) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& g : geo)
    for (double s : g.speed) lo = std::min(lo, s);
  return lo;
}

}  // namespace

StepResult step(const NetworkState& state, const StepConfig& config) {
  const auto geo = compute_geometry(state);
  const double e_prev = elastic_energy(geo, config.mu);
  double dt = config.dt;
  std::string last_reason;

  for (int halvings = 0; halvings <= config.tol.max_halvings; ++halvings, dt *= 0.5) {
    NetworkState candidate = apply_linear_step(state, geo, config.mu, dt);
    // project away the O(dt) drift of the frozen-coefficient junction rows
    calibrate_third_order(candidate, config.mu);
    const auto cgeo = compute_geometry(candidate);

    const double energy = elastic_energy(cgeo, config.mu);
    if (!std::isfinite(energy)) {
      last_reason = fmt::format("non-finite energy at dt={}", dt);
      continue;
    }
    const double speed = min_discrete_speed(cgeo);
    if (speed < config.tol.min_speed) {
      last_reason = fmt::format("min |gamma_x| {} below regularity floor at dt={}", speed, dt);
      continue;
    }
    if (energy > e_prev + config.energy_increase_tol) {
      last_reason = fmt::format("energy rose {} -> {} at dt={}", e_prev, energy, dt);
      continue;
    }
    const double third = nonlinear_third_order_residual(candidate, cgeo, config.mu);
    if (third > config.tol.step_third_order) {
      last_reason = fmt::format("third-order residual {} at dt={}", third, dt);
      continue;
    }
    const double bk = max_boundary_abs_k(candidate, cgeo);
    if (bk > config.tol.step_curvature) {
      last_reason = fmt::format("boundary |k| {} at dt={}", bk, dt);
      continue;
    }
    return StepResult{std::move(candidate), dt, halvings, energy, third};
  }
  throw StepFailure(fmt::format("no acceptable dt after {} halvings from {}: {}",
                                config.tol.max_halvings, config.dt, last_reason));
}

namespace {

std::vector<Vec2> node_velocities(const NetworkState& state, double mu) {
  const int n = state.grid_n();
  std::vector<Vec2> sum(state.node_count(), Vec2::Zero());
  std::vector<int> count(state.node_count(), 0);
  for (int c = 0; c < state.curve_count(); ++c) {
    const auto g = compute_curve_geometry(state, c);
    const auto v = g.velocity_vector(mu);
    const int last = state.topology().closed[c] ? n - 1 : n;
    for (int j = 0; j <= last; ++j) {
      sum[state.node_id(c, j)] += v[j];
      ++count[state.node_id(c, j)];
    }
  }
  std::vector<Vec2> vel(sum.size());
  for (size_t i = 0; i < sum.size(); ++i) vel[i] = -sum[i] / std::max(count[i], 1);
  for (const auto& ep : state.topology().endpoints)
    vel[state.node_id(ep.end.curve, state.end_index(ep.end.end))] = Vec2::Zero();
  return vel;
}

}  // namespace

NetworkState step_explicit(const NetworkState& state, double mu, double dt) {
  auto guard = [&](const std::vector<Vec2>& v) {
    for (const auto& p : v)
      if (!p.allFinite() || p.norm() > 1e12)
        throw InstabilityError(fmt::format(
            "explicit stage velocity blew up at t={}, dt={}", state.time(), dt));
  };
  auto shifted = [&](const std::vector<Vec2>& v, double a) {
    NetworkState s = state;
    auto& nodes = s.nodes();
    for (size_t i = 0; i < nodes.size(); ++i) nodes[i] += a * v[i];
    return s;
  };

  const auto k1 = node_velocities(state, mu);
  guard(k1);
  const auto k2 = node_velocities(shifted(k1, 0.5 * dt), mu);
  guard(k2);
  const auto k3 = node_velocities(shifted(k2, 0.5 * dt), mu);
  guard(k3);
  const auto k4 = node_velocities(shifted(k3, dt), mu);
  guard(k4);

  NetworkState out = state;
  auto& nodes = out.nodes();
  for (size_t i = 0; i < nodes.size(); ++i)
    nodes[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  for (const auto& ep : out.topology().endpoints)
    out.set_point(ep.end.curve, out.end_index(ep.end.end), ep.position);
  out.set_time(state.time() + dt);
  return out;
}

const char* to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::ReachedTEnd: return "reached_t_end";
    case RunVerdict::Inadmissible: return "inadmissible";
    case RunVerdict::LengthCollapse: return "length_collapse";
    case RunVerdict::AngleDegeneracy: return "angle_degeneracy";
    case RunVerdict::SolverFailure: return "solver_failure";
  }
  return "unknown";
}

RunResult run(const NetworkState& initial, const RunConfig& config) {
  FlowParams params = config.params;
  params.validate();
  initial.validate();

  RunResult res;
  const double mu = params.mu;

  const auto gate = check_geometric(initial, mu, params.tol);
  if (!gate.geometric()) {
    res.verdict = RunVerdict::Inadmissible;
    std::string msg = "initial state rejected:";
    for (const auto& r : gate.reasons) msg += " " + r + ";";
    res.message = msg;
    res.final_state = initial;
    return res;
  }

  NetworkState state = make_admissible(initial, mu, params.tol);
  if (params.min_length_threshold <= 0.0)
    params.min_length_threshold = 1e-3 * total_length(state);

  res.initial_energy = elastic_energy(state, mu);
  StepConfig scfg;
  scfg.dt = params.dt;
  scfg.mu = mu;
  scfg.energy_increase_tol = params.tol.energy_increase_rel * res.initial_energy;
  scfg.tol = params.tol;

  res.series.push_back(monitor_state(state, mu, params));
  res.frames.push_back(state);
  res.verdict = RunVerdict::ReachedTEnd;

  if (res.series.back().length_collapse || res.series.back().angle_degeneracy) {
    res.verdict = res.series.back().length_collapse ? RunVerdict::LengthCollapse
                                                    : RunVerdict::AngleDegeneracy;
    res.message = "initial state already below a singularity threshold";
    res.final_state = state;
    return res;
  }

  int since_reparam = 0;
  try {
    while (state.time() < params.t_end - 1e-12) {
      StepConfig cfg_now = scfg;
      cfg_now.dt = std::min(scfg.dt, params.t_end - state.time());
      StepResult sr = step(state, cfg_now);
      if (sr.halvings > 0) scfg.dt = sr.dt_used;

      MonitorReport row = monitor_state(sr.state, mu, params);
      monitor_step(row, state, sr.state, mu, sr.dt_used);
      res.series.push_back(row);
      state = std::move(sr.state);
      ++res.accepted_steps;
      ++since_reparam;

      if (config.frames_every > 0 && res.accepted_steps % config.frames_every == 0)
        res.frames.push_back(state);

      if (row.length_collapse || row.angle_degeneracy) {
        res.verdict = row.length_collapse ? RunVerdict::LengthCollapse
                                          : RunVerdict::AngleDegeneracy;
        res.message = fmt::format(
            "singularity at t={}: {}", state.time(),
            row.length_collapse ? "a curve length fell below the collapse threshold"
                                : "a junction angle degenerated");
        break;
      }
      if (params.reparam_cadence > 0 && since_reparam >= params.reparam_cadence &&
          state.time() < params.t_end - 1e-12) {
        state = reparametrize_constant_speed(state);
        since_reparam = 0;
      }
    }
  } catch (const StepFailure& e) {
    res.verdict = RunVerdict::SolverFailure;
    res.message = e.what();
  } catch (const DegenerateJunction& e) {
    res.verdict = RunVerdict::AngleDegeneracy;
    res.message = e.what();
  }

  if (res.message.empty())
    res.message = fmt::format("reached t={} in {} steps", state.time(), res.accepted_steps);
  if (res.frames.empty() || res.frames.back().time() != state.time())
    res.frames.push_back(state);
  res.final_state = std::move(state);
  return res;
}

}  // namespace elastica
