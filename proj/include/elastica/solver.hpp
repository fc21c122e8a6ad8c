#pragma once

#include <vector>

#include "elastica/monitors.hpp"
#include "elastica/params.hpp"
#include "elastica/state.hpp"

namespace elastica {

struct StepConfig {
  double dt = 1e-3;
  double mu = 1.0;
  double energy_increase_tol = 0.0;  // absolute; run() wires rel * E(0)
  Tolerances tol;
};

struct StepResult {
  NetworkState state;
  double dt_used = 0.0;      // accepted dt after any halvings
  int halvings = 0;
  double energy = 0.0;
  double third_order_residual = 0.0;
};

/// One linearly-implicit step with adaptive halving: the candidate is rejected
/// (and dt halved, up to tol.max_halvings) when the energy rises beyond
/// energy_increase_tol, the nonlinear third-order residual exceeds
/// tol.step_third_order, or regularity fails (min |gamma_x| < tol.min_speed).
/// Throws StepFailure when no acceptable dt remains.
StepResult step(const NetworkState& state, const StepConfig& config);

/// Classical RK4 on the full velocity gamma_t = -V with boundary conditions
/// re-imposed after each stage (pinned endpoints; shared junction nodes move
/// with the average of their incident-curve velocities). Stability requires
/// dt <~ 0.05 min|gamma_x|^4 h^4; throws InstabilityError on blow-up.
NetworkState step_explicit(const NetworkState& state, double mu, double dt);

enum class RunVerdict {
  ReachedTEnd,
  Inadmissible,
  LengthCollapse,    // singularity criterion (i)
  AngleDegeneracy,   // singularity criterion (ii)
  SolverFailure,
};

const char* to_string(RunVerdict v);

struct RunConfig {
  FlowParams params;
  int frames_every = 0;  // snapshot cadence in accepted steps; 0 = first/last only
};

struct RunResult {
  RunVerdict verdict = RunVerdict::ReachedTEnd;
  std::string message;
  std::vector<MonitorReport> series;   // one row per accepted step + initial row
  std::vector<NetworkState> frames;    // initial, cadence snapshots, final
  NetworkState final_state;
  double initial_energy = 0.0;
  int accepted_steps = 0;
};

/// Full flow: admissibility gate, one make_admissible pass, stepping with
/// monitors, constant-speed reparametrization at the configured cadence, and
/// early termination on singularity verdicts or solver failure.
RunResult run(const NetworkState& initial, const RunConfig& config);

}  // namespace elastica
