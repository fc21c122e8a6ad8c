#pragma once

#include "elastica/types.hpp"

namespace elastica {

/// Thresholds used by admissibility checks and the implicit step's accept/reject logic.
struct Tolerances {
  double adm_curvature = 1e-6;       // |k| at junctions and fixed endpoints
  double adm_third_order = 1e-6;     // |sum of (2 k_s nu - mu tau)| at junctions
  double adm_second_order = 1e-6;    // |gamma_xx| at boundary nodes (analytic verdict)
  double energy_increase_rel = 1e-10;   // accepted step may raise E by at most rel * E(0)
  double step_third_order = 1e-5;    // post-step nonlinear third-order residual
  double step_curvature = 1e-6;      // post-step |k| at junctions/endpoints
  double det_m_min = 1e-6;           // junction tangential solve degeneracy guard
  double min_speed = 1e-8;           // |gamma_x| regularity floor
  int max_halvings = 30;             // dt halving attempts before StepFailure
};

/// Flow configuration attached to a scene.
struct FlowParams {
  double mu = 1.0;
  int grid_n = 64;
  double dt = 1e-3;
  double t_end = 1.0;
  int reparam_cadence = 10;          // constant-speed reparametrization every k accepted steps; 0 disables
  double min_length_threshold = 0.0; // absolute; 0 = auto (1e-3 x initial total length)
  double min_sin_angle_threshold = 1e-2;
  Tolerances tol;

  /// Throws InvalidParams on non-positive mu/dt/t_end, grid_n < 8, or negative thresholds.
  void validate() const;
};

}  // namespace elastica
