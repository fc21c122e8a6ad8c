#include "elastica/stencils.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace elastica {

std::vector<double> fd_weights(double z, const std::vector<double>& points, int order) {
  const int nd = static_cast<int>(points.size()) - 1;
  const int m = order;
  if (nd < m) throw std::invalid_argument("fd_weights: not enough points for derivative order");
  // Fornberg's recursion for all derivative orders up to m at once.
  std::vector<std::vector<double>> c(nd + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = points[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= nd; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0, c5 = c4;
    c4 = points[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = points[i] - points[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(nd + 1);
  for (int i = 0; i <= nd; ++i) w[i] = c[i][m];
  return w;
}

namespace {

StencilRow make_row(int j, int first, int count, int order, double h) {
  std::vector<double> pts(count);
  for (int k = 0; k < count; ++k) pts[k] = first + k;
  StencilRow row;
  row.offset = first;
  row.weights = fd_weights(double(j), pts, order);
  const double scale = std::pow(h, -order);
  for (double& w : row.weights) w *= scale;
  return row;
}

}  // namespace

DiffOps::DiffOps(int n, bool periodic) : n_(n), periodic_(periodic) {
  if (n < 8) throw std::invalid_argument("DiffOps: grid too coarse");
  const double hh = 1.0 / n;
  for (int order = 1; order <= 4; ++order) {
    const int r4 = order <= 2 ? 2 : 3;        // centered 4th-order half-width
    const int w2 = order + 2;                 // clamped 2nd-order window size
    const int rows = periodic ? n : n + 1;
    auto& table = rows_[order - 1];
    table.reserve(rows);
    for (int j = 0; j < rows; ++j) {
      if (periodic) {
        table.push_back(make_row(j, j - r4, 2 * r4 + 1, order, hh));
      } else if (j - r4 >= 0 && j + r4 <= n) {
        table.push_back(make_row(j, j - r4, 2 * r4 + 1, order, hh));
      } else {
        const int first = std::clamp(j - (w2 - 1) / 2, 0, n - w2 + 1);
        table.push_back(make_row(j, first, w2, order, hh));
      }
    }
  }
}

template <typename T>
static std::vector<T> apply_impl(const DiffOps& ops, int order, const std::vector<T>& v) {
  const int n = ops.n();
  const bool wrapped_input = ops.periodic() && static_cast<int>(v.size()) == n + 1;
  const int expect = ops.periodic() ? n : n + 1;
  if (static_cast<int>(v.size()) != expect && !wrapped_input)
    throw std::invalid_argument("DiffOps::apply: sample count mismatch");

  std::vector<T> out(v.size());
  const int rows = ops.periodic() ? n : n + 1;
  for (int j = 0; j < rows; ++j) {
    const StencilRow& row = ops.row(order, j);
    T acc = v[0] * 0.0;
    for (size_t k = 0; k < row.weights.size(); ++k) {
      int idx = row.offset + static_cast<int>(k);
      if (ops.periodic()) idx = ((idx % n) + n) % n;
      acc += row.weights[k] * v[idx];
    }
    out[j] = acc;
  }
  if (wrapped_input) out[n] = out[0];
  return out;
}

std::vector<double> DiffOps::apply(int order, const std::vector<double>& values) const {
  return apply_impl(*this, order, values);
}

std::vector<Vec2> DiffOps::apply(int order, const std::vector<Vec2>& values) const {
  return apply_impl(*this, order, values);
}

const DiffOps& DiffOps::get(int n, bool periodic) {
  static std::mutex mtx;
  static std::map<std::pair<int, bool>, std::unique_ptr<DiffOps>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{n, periodic}];
  if (!slot) slot = std::make_unique<DiffOps>(n, periodic);
  return *slot;
}

}  // namespace elastica
