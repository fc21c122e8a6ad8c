#include "elastica/primitives.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace elastica {

Vec2 Primitive::velocity(double x) const {
  // 4th-order central difference, shifted inside [0,1] near the ends.
  const double h = 1e-5;
  double c = std::min(std::max(x, 2 * h), 1.0 - 2 * h);
  Vec2 d = (eval(c - 2 * h) - 8.0 * eval(c - h) + 8.0 * eval(c + h) - eval(c + 2 * h)) / (12 * h);
  if (c != x) {
    // second-order Taylor correction for the shift
    Vec2 d2 = (eval(c - h) - 2.0 * eval(c) + eval(c + h)) / (h * h);
    d += (x - c) * d2;
  }
  return d;
}

CubicSpline::CubicSpline(std::vector<Vec2> points) : pts_(std::move(points)) {
  const int n = static_cast<int>(pts_.size());
  if (n < 2) throw InvalidState("spline needs at least two control points");
  m_.assign(n, Vec2::Zero());
  if (n == 2) return;  // degenerates to a segment
  if (n == 3) {
    // single interior condition, natural ends
    m_[1] = 3.0 * (pts_[0] - 2.0 * pts_[1] + pts_[2]);
    return;
  }
  // Not-a-knot cubic spline on the uniform knot grid t_i = i/(n-1), solved for
  // knot second derivatives.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, 2);
  const double h = 1.0 / (n - 1);
  for (int i = 1; i + 1 < n; ++i) {
    A(i, i - 1) = h / 6.0;
    A(i, i) = 2.0 * h / 3.0;
    A(i, i + 1) = h / 6.0;
    Vec2 r = (pts_[i + 1] - 2.0 * pts_[i] + pts_[i - 1]) / h;
    rhs.row(i) = r.transpose();
  }
  // not-a-knot: third derivative continuous across the first/last interior knot
  A(0, 0) = 1.0; A(0, 1) = -2.0; A(0, 2) = 1.0;
  A(n - 1, n - 3) = 1.0; A(n - 1, n - 2) = -2.0; A(n - 1, n - 1) = 1.0;
  Eigen::MatrixXd sol = A.partialPivLu().solve(rhs);
  for (int i = 0; i < n; ++i) m_[i] = sol.row(i).transpose();
}

Vec2 CubicSpline::eval(double x) const {
  const int n = static_cast<int>(pts_.size());
  if (n == 2) return pts_[0] + x * (pts_[1] - pts_[0]);
  const double h = 1.0 / (n - 1);
  int i = std::min(std::max(static_cast<int>(std::floor(x / h)), 0), n - 2);
  const double a = (x - i * h) / h;  // local coordinate in [0,1]
  const double b = 1.0 - a;
  return b * pts_[i] + a * pts_[i + 1] +
         (h * h / 6.0) * ((b * b * b - b) * m_[i] + (a * a * a - a) * m_[i + 1]);
}

Vec2 CubicSpline::velocity(double x) const {
  const int n = static_cast<int>(pts_.size());
  if (n == 2) return pts_[1] - pts_[0];
  const double h = 1.0 / (n - 1);
  int i = std::min(std::max(static_cast<int>(std::floor(x / h)), 0), n - 2);
  const double a = (x - i * h) / h;
  const double b = 1.0 - a;
  return (pts_[i + 1] - pts_[i]) / h +
         (h / 6.0) * ((1.0 - 3.0 * b * b) * m_[i] + (3.0 * a * a - 1.0) * m_[i + 1]);
}

}  // namespace elastica
