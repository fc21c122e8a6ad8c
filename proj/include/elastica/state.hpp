#pragma once

#include <vector>

#include "elastica/params.hpp"
#include "elastica/primitives.hpp"
#include "elastica/topology.hpp"

namespace elastica {

/// Sampled network at one time.
///
/// Node positions live in a shared pool; each curve is a list of grid_n + 1
/// node ids over the uniform parameter grid x_j = j / grid_n. A junction is a
/// single pool node referenced by all three incident curves, so concurrency is
/// exact by construction. A closed curve references its first node again in
/// the last slot.
class NetworkState {
 public:
  NetworkState() = default;
  NetworkState(NetworkTopology topology, int grid_n);

  const NetworkTopology& topology() const { return topo_; }
  int grid_n() const { return grid_n_; }
  int curve_count() const { return topo_.curve_count; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  std::vector<Vec2>& nodes() { return nodes_; }

  /// Pool id of node j of curve c.
  int node_id(int curve, int j) const { return ids_[curve][j]; }
  const std::vector<int>& curve_node_ids(int curve) const { return ids_[curve]; }

  Vec2 point(int curve, int j) const { return nodes_[ids_[curve][j]]; }
  void set_point(int curve, int j, const Vec2& p) { nodes_[ids_[curve][j]] = p; }

  /// Materialized sample array of one curve, length grid_n + 1.
  std::vector<Vec2> curve_points(int curve) const;
  void set_curve_points(int curve, const std::vector<Vec2>& pts);

  int junction_node(int junction) const { return junction_nodes_[junction]; }
  Vec2 junction_position(int junction) const { return nodes_[junction_nodes_[junction]]; }

  /// Grid index of the given end on its curve (0 or grid_n).
  int end_index(CurveEnd e) const { return e == CurveEnd::Start ? 0 : grid_n_; }

  /// Throws InvalidState on non-finite samples, duplicate consecutive nodes,
  /// vanishing discrete first derivatives, or endpoint positions that do not
  /// match the pinned values.
  void validate(double min_speed = 1e-12) const;

 private:
  NetworkTopology topo_;
  int grid_n_ = 0;
  double time_ = 0.0;
  std::vector<Vec2> nodes_;
  std::vector<std::vector<int>> ids_;
  std::vector<int> junction_nodes_;
};

/// Samples the primitives on the uniform grid and wires shared junction nodes.
/// Junction and fixed-endpoint node positions are taken from the topology's
/// junction-averaged primitive ends; mismatched primitive ends beyond tol throw.
NetworkState build_state(const NetworkTopology& topology,
                         const std::vector<PrimitivePtr>& primitives, int grid_n,
                         double end_mismatch_tol = 1e-9);

}  // namespace elastica
