#pragma once

#include <vector>

#include "elastica/state.hpp"
#include "elastica/stencils.hpp"

namespace elastica {

/// Pointwise differential-geometric fields of one sampled curve.
///
/// Arrays have grid_n + 1 entries (closed curves repeat the first node at the
/// end so indexing is uniform). Orientation start->finish fixes the sign of k
/// through nu = rot90(tau); a counter-clockwise circle has k = +1/r and inward
/// normal.
struct CurveGeometry {
  bool closed = false;
  std::vector<Vec2> gamma, gamma_x, gamma_xx, gamma_xxx, gamma_xxxx;
  std::vector<double> speed;           // |gamma_x|
  std::vector<Vec2> tau, nu;
  std::vector<double> k, k_s, k_ss;    // k_s = (1/|gamma_x|) d/dx k, likewise k_ss
  std::vector<double> ds;              // trapezoidal quadrature weights, sum = length
  double length = 0.0;

  /// Normal velocity magnitude A = 2 k_ss + k^3 - mu k.
  std::vector<double> normal_velocity(double mu) const;
  /// Tangential velocity from the six-term quasilinear form.
  std::vector<double> tangential_velocity(double mu) const;
  /// Full velocity vector V with gamma_t = -V; satisfies V = A nu + T tau.
  std::vector<Vec2> velocity_vector(double mu) const;

  /// d/ds of an arbitrary node field.
  std::vector<double> arclength_derivative(const std::vector<double>& f) const;

  /// k_s at node j evaluated directly from the derivative arrays,
  ///   k_s = <gamma_xxx, nu>/|gamma_x|^3 - 3 k <gamma_xx, tau>/|gamma_x|^2.
  /// Used at curve ends, where it is the same functional of the node
  /// positions that the implicit step's junction rows enforce.
  double boundary_k_s(int j) const;

  /// Right side of the curvature evolution equation in two algebraically
  /// equivalent groupings (grouped through A and A_ss, and fully expanded);
  /// they must agree to roundoff.
  std::vector<double> curvature_time_rhs_geometric(double mu) const;
  std::vector<double> curvature_time_rhs_expanded(double mu) const;
};

CurveGeometry compute_curve_geometry(const NetworkState& state, int curve);

/// All curves of a network.
std::vector<CurveGeometry> compute_geometry(const NetworkState& state);

/// Integral of (k^2 + mu) ds over the whole network (trapezoidal quadrature).
double elastic_energy(const NetworkState& state, double mu);
double elastic_energy(const std::vector<CurveGeometry>& geo, double mu);

double curve_length(const NetworkState& state, int curve);
double total_length(const NetworkState& state);

/// L2 norms over the network: sqrt(sum integral f^2 ds).
double l2_norm(const std::vector<CurveGeometry>& geo,
               const std::vector<std::vector<double>>& field);

/// Quadrature of A^2 over the network (energy dissipation integrand).
double dissipation_integral(const std::vector<CurveGeometry>& geo, double mu);

/// Symmetric Hausdorff distance between polylines (max over both directions of
/// point-to-segment distance).
double polyline_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

/// Hausdorff distance between two states of the same topology: max over curves.
double state_hausdorff(const NetworkState& a, const NetworkState& b);

}  // namespace elastica
