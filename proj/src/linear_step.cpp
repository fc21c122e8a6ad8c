#include "elastica/linear_step.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "elastica/stencils.hpp"

namespace elastica {

const char* to_string(RowKind k) {
  switch (k) {
    case RowKind::Motion: return "motion";
    case RowKind::SecondOrder: return "second-order";
    case RowKind::ThirdOrder: return "third-order";
    case RowKind::EndpointPosition: return "endpoint-position";
  }
  return "?";
}

int LinearStep::rows_of_kind(RowKind k) const {
  return static_cast<int>(std::count(row_kinds.begin(), row_kinds.end(), k));
}

namespace {

double end_sign(CurveEnd e) { return e == CurveEnd::Start ? 1.0 : -1.0; }

struct Builder {
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<double> rhs;
  std::vector<RowKind> kinds;

  int new_row(RowKind kind, double r) {
    kinds.push_back(kind);
    rhs.push_back(r);
    return static_cast<int>(kinds.size()) - 1;
  }
  void add(int row, int col, double v) { trips.emplace_back(row, col, v); }
};

}  // namespace

LinearStep assemble(const NetworkState& state, const std::vector<CurveGeometry>& geo,
                    double mu, double dt) {
  const int n = state.grid_n();
  const int unknowns = 2 * state.node_count();
  Builder b;

  auto col = [&](int curve, int j, int comp) {
    return 2 * state.node_id(curve, j) + comp;
  };
  auto wrap = [&](int j) { return ((j % n) + n) % n; };

  // motion rows: delta/dt + (2/speed^4) D4 delta = -V
  for (int c = 0; c < state.curve_count(); ++c) {
    const bool closed = state.topology().closed[c];
    const auto& ops = DiffOps::get(n, closed);
    const auto V = geo[c].velocity_vector(mu);
    const int j_lo = closed ? 0 : 2;
    const int j_hi = closed ? n - 1 : n - 2;
    for (int j = j_lo; j <= j_hi; ++j) {
      const double cj = 2.0 / std::pow(geo[c].speed[j], 4);
      const StencilRow& d4 = ops.row(4, j);
      for (int comp = 0; comp < 2; ++comp) {
        const int row = b.new_row(RowKind::Motion, -V[j][comp]);
        b.add(row, col(c, j, comp), 1.0 / dt);
        for (size_t k = 0; k < d4.weights.size(); ++k) {
          int idx = d4.offset + static_cast<int>(k);
          if (closed) idx = wrap(idx);
          b.add(row, col(c, idx, comp), cj * d4.weights[k]);
        }
      }
    }
  }

  const auto& open_ops = DiffOps::get(n, false);
  auto add_second_order_rows = [&](EndRef ref) {
    const int y = ref.end == CurveEnd::Start ? 0 : n;
    const StencilRow& d2 = open_ops.row(2, y);
    for (int comp = 0; comp < 2; ++comp) {
      double resid = 0.0;
      for (size_t k = 0; k < d2.weights.size(); ++k)
        resid += d2.weights[k] * geo[ref.curve].gamma[d2.offset + k][comp];
      const int row = b.new_row(RowKind::SecondOrder, -resid);
      for (size_t k = 0; k < d2.weights.size(); ++k)
        b.add(row, col(ref.curve, d2.offset + static_cast<int>(k), comp), d2.weights[k]);
    }
  };

  for (size_t jn = 0; jn < state.topology().junctions.size(); ++jn) {
    const auto& ends = state.topology().junctions[jn].ends;
    for (const auto& e : ends) add_second_order_rows(e);

    // third-order rows (frozen linearization):
    //   -sum_e sigma_e speed^-3 <gamma_xxx(y_e), nu_e> nu_e = b
    // assembled on the increment, so the right side is the current residual.
    Vec2 rhs_vec = Vec2::Zero();
    for (const auto& e : ends) {
      const auto& g = geo[e.curve];
      const int y = e.end == CurveEnd::Start ? 0 : n;
      const double sg = end_sign(e.end);
      const double ce = 1.0 / std::pow(g.speed[y], 3);
      const double tang = g.gamma_xx[y].dot(g.tau[y]) / (g.speed[y] * g.speed[y]);
      // b-contribution
      rhs_vec += -0.5 * sg * (6.0 * g.k[y] * tang * g.nu[y] + mu * g.tau[y]);
      // move the frozen operator applied to gamma^n to the right side
      rhs_vec += sg * ce * g.gamma_xxx[y].dot(g.nu[y]) * g.nu[y];
    }
    const int row_x = b.new_row(RowKind::ThirdOrder, rhs_vec.x());
    const int row_y = b.new_row(RowKind::ThirdOrder, rhs_vec.y());
    for (const auto& e : ends) {
      const auto& g = geo[e.curve];
      const int y = e.end == CurveEnd::Start ? 0 : n;
      const double sg = end_sign(e.end);
      const double ce = 1.0 / std::pow(g.speed[y], 3);
      const Vec2 nu = g.nu[y];
      const StencilRow& d3 = open_ops.row(3, y);
      for (size_t k = 0; k < d3.weights.size(); ++k) {
        const int idx = d3.offset + static_cast<int>(k);
        for (int m = 0; m < 2; ++m) {
          const double w = -sg * ce * d3.weights[k] * nu[m];
          b.add(row_x, col(e.curve, idx, m), w * nu.x());
          b.add(row_y, col(e.curve, idx, m), w * nu.y());
        }
      }
    }
  }

  for (const auto& ep : state.topology().endpoints) {
    const int y = ep.end.end == CurveEnd::Start ? 0 : n;
    for (int comp = 0; comp < 2; ++comp) {
      const double gap = ep.position[comp] - geo[ep.end.curve].gamma[y][comp];
      const int row = b.new_row(RowKind::EndpointPosition, gap);
      b.add(row, col(ep.end.curve, y, comp), 1.0);
    }
    add_second_order_rows(ep.end);
  }

  const int rows = static_cast<int>(b.kinds.size());
  if (rows != unknowns)
    throw InvalidState(fmt::format("linear step not square: {} rows, {} unknowns", rows, unknowns));

  // row max-norm equilibration
  std::vector<double> row_max(rows, 0.0);
  for (const auto& t : b.trips) row_max[t.row()] = std::max(row_max[t.row()], std::abs(t.value()));
  for (auto& t : b.trips) {
    if (row_max[t.row()] > 0.0)
      t = Eigen::Triplet<double>(t.row(), t.col(), t.value() / row_max[t.row()]);
  }

  LinearStep step;
  step.unknowns = unknowns;
  step.row_kinds = std::move(b.kinds);
  step.structural_concurrency = 4 * static_cast<int>(state.topology().junctions.size());
  step.matrix.resize(rows, unknowns);
  step.matrix.setFromTriplets(b.trips.begin(), b.trips.end());
  step.rhs.resize(rows);
  for (int r = 0; r < rows; ++r)
    step.rhs[r] = row_max[r] > 0.0 ? b.rhs[r] / row_max[r] : b.rhs[r];
  return step;
}

void LinearStep::audit(const NetworkState& state) const {
  const int n = state.grid_n();
  const auto& topo = state.topology();
  if (matrix.rows() != matrix.cols() || matrix.rows() != unknowns)
    throw InvalidState("audit: system is not square");
  if (unknowns != 2 * state.node_count())
    throw InvalidState("audit: unknown count does not match pool nodes");

  int expect_motion = 0;
  int open_ends = 0;
  for (int c = 0; c < topo.curve_count; ++c) {
    expect_motion += 2 * (topo.closed[c] ? n : n - 3);
    if (!topo.closed[c]) open_ends += 2;
  }
  const int junctions = static_cast<int>(topo.junctions.size());
  const int endpoints = static_cast<int>(topo.endpoints.size());
  if (rows_of_kind(RowKind::Motion) != expect_motion)
    throw InvalidState(fmt::format("audit: motion rows {} != expected {}",
                                   rows_of_kind(RowKind::Motion), expect_motion));
  if (rows_of_kind(RowKind::SecondOrder) != 2 * open_ends)
    throw InvalidState("audit: second-order rows must cover every open curve-end");
  if (rows_of_kind(RowKind::ThirdOrder) != 2 * junctions)
    throw InvalidState("audit: third-order rows must be 2 per junction");
  if (rows_of_kind(RowKind::EndpointPosition) != 2 * endpoints)
    throw InvalidState("audit: position rows must be 2 per fixed endpoint");
  if (structural_concurrency != 4 * junctions)
    throw InvalidState("audit: concurrency census must be 4 per junction");
  // per-junction condition census: 4 structural + 6 second-order + 2 third-order = 12
  if (junctions > 0) {
    const int per_junction = structural_concurrency / junctions + 6 + 2;
    if (per_junction != 12)
      throw InvalidState("audit: junction condition census must be 12 scalar conditions");
  }
  // per-endpoint census: 2 position + 2 second-order = 4
  const int total =
      rows_of_kind(RowKind::Motion) + rows_of_kind(RowKind::SecondOrder) +
      rows_of_kind(RowKind::ThirdOrder) + rows_of_kind(RowKind::EndpointPosition);
  if (total != unknowns) throw InvalidState("audit: row classes do not sum to unknowns");
}

NetworkState apply_linear_step(const NetworkState& state,
                               const std::vector<CurveGeometry>& geo, double mu,
                               double dt) {
  LinearStep sys = assemble(state, geo, mu, dt);

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(sys.matrix);
  if (lu.info() != Eigen::Success) {
    // Singular assemblies trace back to junction normals failing to span.
    for (size_t jn = 0; jn < state.topology().junctions.size(); ++jn) {
      const auto& ends = state.topology().junctions[jn].ends;
      std::array<Vec2, 3> tau{};
      for (int e = 0; e < 3; ++e) {
        const auto& g = geo[ends[e].curve];
        tau[e] = g.tau[ends[e].end == CurveEnd::Start ? 0 : state.grid_n()];
      }
      const double det = 1.0 - tau[0].dot(tau[1]) * tau[1].dot(tau[2]) * tau[2].dot(tau[0]);
      if (det < 1e-6)
        throw DegenerateJunction(
            fmt::format("junction {} degenerate during step (det M = {:.3e})", jn, det));
    }
    throw StepFailure("linear step factorization failed");
  }
  Eigen::VectorXd delta = lu.solve(sys.rhs);
  // one iterative-refinement pass
  Eigen::VectorXd resid = sys.rhs - sys.matrix * delta;
  delta += lu.solve(resid);
  if (!delta.allFinite()) throw StepFailure("linear step produced non-finite increment");

  NetworkState out = state;
  auto& nodes = out.nodes();
  for (int i = 0; i < state.node_count(); ++i)
    nodes[i] += Vec2(delta[2 * i], delta[2 * i + 1]);
  // pin endpoints exactly
  for (const auto& ep : state.topology().endpoints)
    out.set_point(ep.end.curve, out.end_index(ep.end.end), ep.position);
  out.set_time(state.time() + dt);
  return out;
}

}  // namespace elastica
