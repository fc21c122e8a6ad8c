#pragma once

#include <optional>
#include <vector>

#include "elastica/types.hpp"

namespace elastica {

/// Which end of a curve: Start is parameter x=0, Finish is x=1.
enum class CurveEnd { Start, Finish };

inline const char* to_string(CurveEnd e) { return e == CurveEnd::Start ? "start" : "finish"; }

struct EndRef {
  int curve = -1;
  CurveEnd end = CurveEnd::Start;
  bool operator==(const EndRef&) const = default;
};

/// Triple junction: exactly three curve-ends meet at one shared node.
struct Junction {
  std::array<EndRef, 3> ends{};
};

/// Fixed endpoint: a curve-end pinned at a prescribed position.
struct FixedEndpoint {
  EndRef end{};
  Vec2 position = Vec2::Zero();
};

/// Connectivity of a network of open and closed curves.
///
/// Every end of every open curve must appear exactly once, either in a
/// junction or as a fixed endpoint. Closed curves have no ends.
struct NetworkTopology {
  int curve_count = 0;
  std::vector<bool> closed;  // per curve
  std::vector<Junction> junctions;
  std::vector<FixedEndpoint> endpoints;

  /// Throws InvalidTopology if any end is unassigned, doubly assigned,
  /// a closed curve appears in a junction/endpoint, or indices are out of range.
  void validate() const;

  /// Junction index a given curve-end belongs to, if any.
  std::optional<int> junction_of(EndRef ref) const;
  std::optional<int> endpoint_of(EndRef ref) const;
};

/// Convenience builders for the common cases.
NetworkTopology triod_topology(const Vec2& p1, const Vec2& p2, const Vec2& p3);
NetworkTopology theta_topology();
NetworkTopology closed_curve_topology();
NetworkTopology segment_topology(const Vec2& p0, const Vec2& p1);

}  // namespace elastica
