#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "elastica/geometry.hpp"
#include "elastica/state.hpp"

namespace elastica {

enum class RowKind { Motion, SecondOrder, ThirdOrder, EndpointPosition };

const char* to_string(RowKind k);

/// Linearly-implicit step system, solved for the increment
/// delta = gamma^{n+1} - gamma^n over the unique pool nodes (x,y interleaved).
///
/// Interior rows discretize delta/dt + (2/|gamma_x^n|^4) D4 delta = -V^n with
/// the fourth-derivative coefficient frozen at the current state and V^n the
/// full velocity vector (its own leading term uses the same D4 stencils, so a
/// stationary state yields a zero right side). Boundary rows impose, on
/// gamma^n + delta: pinned endpoint positions, vanishing one-sided second
/// differences at every curve end, and the frozen-coefficient third-order
/// junction condition
///   -sum_e sigma_e |gamma_x(y_e)|^-3 <gamma_xxx(y_e), nu_e> nu_e = b
/// with b = -(1/2) sum_e sigma_e [ 6 k <gamma_xx,tau>/|gamma_x|^2 nu + mu tau ]
/// evaluated at the current state (sigma_e = +1/-1 for a curve starting/ending
/// at the junction). Concurrency is structural: incident ends reference one
/// shared pool node.
struct LinearStep {
  Eigen::SparseMatrix<double> matrix;  // row-equilibrated
  Eigen::VectorXd rhs;
  std::vector<RowKind> row_kinds;      // one entry per scalar row
  int unknowns = 0;
  int structural_concurrency = 0;      // scalar concurrency conditions absorbed by node sharing

  int rows_of_kind(RowKind k) const;

  /// Square system; per junction the condition census is 12 scalar conditions
  /// (4 structural concurrency + 6 second-order + 2 third-order) and per fixed
  /// endpoint 4 (2 position + 2 second-order). Throws on violation.
  void audit(const NetworkState& state) const;
};

LinearStep assemble(const NetworkState& state,
                    const std::vector<CurveGeometry>& geo, double mu, double dt);

/// Solves for the increment (sparse LU + one iterative-refinement pass) and
/// returns the advanced state. Throws DegenerateJunction if the junction
/// normals do not span (singular factorization traced to third-order rows).
NetworkState apply_linear_step(const NetworkState& state,
                               const std::vector<CurveGeometry>& geo, double mu,
                               double dt);

}  // namespace elastica
