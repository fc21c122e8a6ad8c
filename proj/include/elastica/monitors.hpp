#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "elastica/geometry.hpp"
#include "elastica/params.hpp"
#include "elastica/state.hpp"

namespace elastica {

/// Per-step diagnostics. Single-state fields are always present; two-state
/// fields (residuals, dissipation match, kinematics) need a predecessor on the
/// same grid and are NaN on the first row and right after reparametrization.
struct MonitorReport {
  double time = 0.0;
  double dt = std::numeric_limits<double>::quiet_NaN();
  double energy = 0.0;
  double total_length = 0.0;
  std::vector<double> curve_lengths;
  double k_l2 = 0.0;     // sqrt(int k^2 ds)
  double ks_l2 = 0.0;
  double kss_l2 = 0.0;
  double min_speed = 0.0;
  double max_speed = 0.0;

  // boundary-condition health
  double concurrency_gap = 0.0;
  double max_junction_abs_k = 0.0;
  double max_endpoint_abs_k = 0.0;
  double max_third_order_residual = 0.0;
  double min_rho_hat = std::numeric_limits<double>::quiet_NaN();  // NaN when no junctions
  double min_det_m = std::numeric_limits<double>::quiet_NaN();

  // two-state fields
  double energy_decrease_rate = std::numeric_limits<double>::quiet_NaN();   // -(E_next - E_prev)/dt
  double dissipation_quadrature = std::numeric_limits<double>::quiet_NaN(); // int A^2 ds at midpoint
  double curvature_evolution_residual = std::numeric_limits<double>::quiet_NaN();
  double ds_evolution_residual = std::numeric_limits<double>::quiet_NaN();
  double junction_kinematics_residual = std::numeric_limits<double>::quiet_NaN();

  // singularity flags
  bool length_collapse = false;   // criterion (i)
  bool angle_degeneracy = false;  // criterion (ii)
};

/// Single-state part of the report.
MonitorReport monitor_state(const NetworkState& state, double mu,
                            const FlowParams& params);

/// Fills the two-state fields given the accepted step prev -> next taken with
/// time step dt (states must share grid and topology; throws GridMismatch).
void monitor_step(MonitorReport& report, const NetworkState& prev,
                  const NetworkState& next, double mu, double dt);

/// Max |(k_next - k_prev)/dt - rhs(midpoint)| over interior nodes of all
/// curves, using the expanded curvature evolution right side at the averaged
/// midpoint state. Interior excludes a band of max(3, n/8) nodes at each open
/// end: there the boundary-condition rows override the motion law, and keeping
/// the band a fixed fraction of the curve makes refinement studies compare
/// like with like. Closed curves measure every node.
double curvature_evolution_residual(const NetworkState& prev,
                                    const NetworkState& next, double mu, double dt);

/// Max over curves of |(len_next - len_prev)/dt - int (k A - T_s) ds| at the
/// averaged midpoint state.
double ds_evolution_residual(const NetworkState& prev, const NetworkState& next,
                             double mu, double dt);

/// Junction-node velocity by finite difference vs -A nu - T tau per incident
/// curve, and the tangential projections vs the Cramer junction solve; returns
/// the max discrepancy over junctions.
double junction_kinematics_check(const NetworkState& prev, const NetworkState& next,
                                 double mu, double dt);

/// Energy series must be non-increasing up to tol_increase per step; returns
/// the first offending index, or nullopt.
std::optional<int> check_energy_series(const std::vector<double>& energies,
                                       double tol_increase);

/// Checks int k^2 ds <= bound_k and total length <= bound_len (with slack
/// factor); both bounds follow from the initial energy: E(0) and E(0)/mu.
struct BoundsCheck {
  bool ok = true;
  double k_sq = 0.0;
  double length = 0.0;
};
BoundsCheck check_bounds(const MonitorReport& report, double initial_energy,
                         double mu, double slack = 1.01);

/// Applies the length/angle thresholds to one report.
struct SingularityVerdict {
  bool length_collapse = false;
  bool angle_degeneracy = false;
  bool any() const { return length_collapse || angle_degeneracy; }
};
SingularityVerdict singularity_verdict(const MonitorReport& report,
                                       double min_length_threshold,
                                       double min_sin_angle_threshold);

/// Rates d/dt ||k_ss||^2 between consecutive reports (diagnostic growth series).
std::vector<double> kss_growth_series(const std::vector<MonitorReport>& series);

}  // namespace elastica
