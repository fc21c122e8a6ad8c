#include "elastica/state.hpp"

#include <fmt/format.h>

#include <cmath>

#include "elastica/stencils.hpp"

namespace elastica {

NetworkState::NetworkState(NetworkTopology topology, int grid_n)
    : topo_(std::move(topology)), grid_n_(grid_n) {
  topo_.validate();
  if (grid_n_ < 4) throw InvalidState("grid_n must be at least 4");
  ids_.assign(topo_.curve_count, std::vector<int>(grid_n_ + 1, -1));
  junction_nodes_.assign(topo_.junctions.size(), -1);

  auto end_node = [&](EndRef ref) -> int& {
    return ids_[ref.curve][ref.end == CurveEnd::Start ? 0 : grid_n_];
  };
  // Materialize each junction as one shared pool node.
  for (size_t jn = 0; jn < topo_.junctions.size(); ++jn) {
    int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back(Vec2::Zero());
    junction_nodes_[jn] = id;
    for (const auto& e : topo_.junctions[jn].ends) end_node(e) = id;
  }
  for (int c = 0; c < topo_.curve_count; ++c) {
    for (int j = 0; j <= grid_n_; ++j) {
      if (ids_[c][j] != -1) continue;
      if (topo_.closed[c] && j == grid_n_) {
        ids_[c][j] = ids_[c][0];
        continue;
      }
      ids_[c][j] = static_cast<int>(nodes_.size());
      nodes_.emplace_back(Vec2::Zero());
    }
  }
}

std::vector<Vec2> NetworkState::curve_points(int curve) const {
  std::vector<Vec2> pts(grid_n_ + 1);
  for (int j = 0; j <= grid_n_; ++j) pts[j] = nodes_[ids_[curve][j]];
  return pts;
}

void NetworkState::set_curve_points(int curve, const std::vector<Vec2>& pts) {
  if (static_cast<int>(pts.size()) != grid_n_ + 1)
    throw InvalidState("sample count must be grid_n + 1");
  for (int j = 0; j <= grid_n_; ++j) nodes_[ids_[curve][j]] = pts[j];
}

void NetworkState::validate(double min_speed) const {
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (!nodes_[i].allFinite())
      throw InvalidState(fmt::format("node {} is not finite", i));
  for (int c = 0; c < topo_.curve_count; ++c) {
    const auto pts = curve_points(c);
    for (int j = 0; j < grid_n_; ++j)
      if ((pts[j + 1] - pts[j]).norm() == 0.0)
        throw InvalidState(fmt::format("curve {}: nodes {} and {} coincide", c, j, j + 1));
    const auto& ops = DiffOps::get(grid_n_, topo_.closed[c]);
    const auto d1 = ops.apply(1, pts);
    for (size_t j = 0; j < d1.size(); ++j)
      if (d1[j].norm() <= min_speed)
        throw InvalidState(
            fmt::format("curve {}: discrete |gamma_x| vanishes at node {}", c, j));
  }
  for (const auto& ep : topo_.endpoints) {
    const Vec2 p = nodes_[ids_[ep.end.curve][end_index(ep.end.end)]];
    if ((p - ep.position).norm() > 1e-12)
      throw InvalidState(fmt::format("endpoint of curve {} drifted from its pinned position",
                                     ep.end.curve));
  }
}

NetworkState build_state(const NetworkTopology& topology,
                         const std::vector<PrimitivePtr>& primitives, int grid_n,
                         double end_mismatch_tol) {
  topology.validate();
  if (static_cast<int>(primitives.size()) != topology.curve_count)
    throw InvalidState("one primitive per curve required");

  NetworkState state(topology, grid_n);
  for (int c = 0; c < topology.curve_count; ++c) {
    std::vector<Vec2> pts(grid_n + 1);
    for (int j = 0; j <= grid_n; ++j) pts[j] = primitives[c]->eval(double(j) / grid_n);
    if (topology.closed[c]) {
      if ((pts[grid_n] - pts[0]).norm() > end_mismatch_tol)
        throw InvalidState(fmt::format("curve {}: closed primitive ends do not meet", c));
      pts[grid_n] = pts[0];
    }
    state.set_curve_points(c, pts);
  }
  // Junction nodes: incident primitive ends must agree; store the average.
  auto end_param = [](CurveEnd e) { return e == CurveEnd::Start ? 0.0 : 1.0; };
  for (size_t jn = 0; jn < topology.junctions.size(); ++jn) {
    const auto& ends = topology.junctions[jn].ends;
    Vec2 mean = Vec2::Zero();
    for (const auto& e : ends) mean += primitives[e.curve]->eval(end_param(e.end));
    mean /= 3.0;
    for (const auto& e : ends) {
      const Vec2 p = primitives[e.curve]->eval(end_param(e.end));
      if ((p - mean).norm() > end_mismatch_tol)
        throw InvalidState(fmt::format(
            "junction {}: primitive ends disagree by {:.3e}", jn, (p - mean).norm()));
    }
    state.nodes()[state.junction_node(static_cast<int>(jn))] = mean;
  }
  for (const auto& ep : topology.endpoints) {
    const Vec2 p = primitives[ep.end.curve]->eval(end_param(ep.end.end));
    if ((p - ep.position).norm() > end_mismatch_tol)
      throw InvalidState(fmt::format("curve {}: primitive end misses its pinned endpoint by {:.3e}",
                                     ep.end.curve, (p - ep.position).norm()));
    state.set_point(ep.end.curve, state.end_index(ep.end.end), ep.position);
  }
  state.validate();
  return state;
}

}  // namespace elastica
