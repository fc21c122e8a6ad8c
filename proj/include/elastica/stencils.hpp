#pragma once

#include <vector>

#include "elastica/types.hpp"

namespace elastica {

/// Finite-difference weights for the m-th derivative at point z from samples at
/// the given grid locations (Fornberg's recursion). Exact for polynomials of
/// degree < points.size().
std::vector<double> fd_weights(double z, const std::vector<double>& points, int order);

/// One row of a difference operator: weights applied at node indices
/// offset + 0 .. offset + weights.size() - 1 (indices are wrapped for
/// periodic grids).
struct StencilRow {
  int offset = 0;
  std::vector<double> weights;
};

/// Difference operators for derivative orders 1..4 on the uniform grid
/// x_j = j/n over [0,1].
///
/// Open grids: centered 4th-order stencils where the window fits (5 points for
/// orders 1-2, 7 points for orders 3-4), clamped windows of m+2 points near the
/// ends (at least 2nd order, one-sided at the end nodes). Periodic grids:
/// centered 4th-order everywhere with wrap-around; rows address the n unique
/// nodes 0..n-1.
class DiffOps {
 public:
  DiffOps(int n, bool periodic);

  int n() const { return n_; }
  bool periodic() const { return periodic_; }
  double h() const { return 1.0 / n_; }

  /// Row of d^order/dx^order at node j; valid j: 0..n (open), 0..n-1 (periodic).
  const StencilRow& row(int order, int j) const { return rows_[order - 1][j]; }

  /// Applies the operator to a sample array (length n+1 open, n periodic;
  /// a periodic array of length n+1 with last == first is also accepted).
  std::vector<double> apply(int order, const std::vector<double>& values) const;
  std::vector<Vec2> apply(int order, const std::vector<Vec2>& values) const;

  /// Cached instance (process-wide, immutable after construction).
  static const DiffOps& get(int n, bool periodic);

 private:
  int n_;
  bool periodic_;
  std::array<std::vector<StencilRow>, 4> rows_;
};

}  // namespace elastica
