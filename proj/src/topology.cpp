#include "elastica/topology.hpp"

#include <fmt/format.h>

namespace elastica {

void NetworkTopology::validate() const {
  if (curve_count <= 0) throw InvalidTopology("network needs at least one curve");
  if (static_cast<int>(closed.size()) != curve_count)
    throw InvalidTopology("closed flags must match curve count");

  // Each open curve-end must be claimed exactly once.
  std::vector<std::array<int, 2>> claims(curve_count, {0, 0});
  auto claim = [&](EndRef ref, const std::string& where) {
    if (ref.curve < 0 || ref.curve >= curve_count)
      throw InvalidTopology(fmt::format("{}: curve index {} out of range", where, ref.curve));
    if (closed[ref.curve])
      throw InvalidTopology(fmt::format("{}: closed curve {} cannot have ends", where, ref.curve));
    int& c = claims[ref.curve][ref.end == CurveEnd::Start ? 0 : 1];
    if (++c > 1)
      throw InvalidTopology(fmt::format("{}: end ({}, {}) assigned more than once", where,
                                        ref.curve, to_string(ref.end)));
  };
  for (size_t i = 0; i < junctions.size(); ++i) {
    const auto& j = junctions[i];
    for (const auto& e : j.ends) claim(e, fmt::format("junction {}", i));
    if (j.ends[0] == j.ends[1] || j.ends[1] == j.ends[2] || j.ends[0] == j.ends[2])
      throw InvalidTopology(fmt::format("junction {} repeats a curve-end", i));
  }
  for (size_t i = 0; i < endpoints.size(); ++i)
    claim(endpoints[i].end, fmt::format("endpoint {}", i));

  for (int c = 0; c < curve_count; ++c) {
    if (closed[c]) continue;
    if (claims[c][0] != 1 || claims[c][1] != 1)
      throw InvalidTopology(fmt::format("curve {}: both ends must appear in a junction or endpoint", c));
  }
}

std::optional<int> NetworkTopology::junction_of(EndRef ref) const {
  for (size_t i = 0; i < junctions.size(); ++i)
    for (const auto& e : junctions[i].ends)
      if (e == ref) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> NetworkTopology::endpoint_of(EndRef ref) const {
  for (size_t i = 0; i < endpoints.size(); ++i)
    if (endpoints[i].end == ref) return static_cast<int>(i);
  return std::nullopt;
}

NetworkTopology triod_topology(const Vec2& p1, const Vec2& p2, const Vec2& p3) {
  NetworkTopology t;
  t.curve_count = 3;
  t.closed = {false, false, false};
  t.junctions.push_back({{EndRef{0, CurveEnd::Start}, EndRef{1, CurveEnd::Start},
                          EndRef{2, CurveEnd::Start}}});
  t.endpoints.push_back({EndRef{0, CurveEnd::Finish}, p1});
  t.endpoints.push_back({EndRef{1, CurveEnd::Finish}, p2});
  t.endpoints.push_back({EndRef{2, CurveEnd::Finish}, p3});
  return t;
}

NetworkTopology theta_topology() {
  NetworkTopology t;
  t.curve_count = 3;
  t.closed = {false, false, false};
  t.junctions.push_back({{EndRef{0, CurveEnd::Start}, EndRef{1, CurveEnd::Start},
                          EndRef{2, CurveEnd::Start}}});
  t.junctions.push_back({{EndRef{0, CurveEnd::Finish}, EndRef{1, CurveEnd::Finish},
                          EndRef{2, CurveEnd::Finish}}});
  return t;
}

NetworkTopology closed_curve_topology() {
  NetworkTopology t;
  t.curve_count = 1;
  t.closed = {true};
  return t;
}

NetworkTopology segment_topology(const Vec2& p0, const Vec2& p1) {
  NetworkTopology t;
  t.curve_count = 1;
  t.closed = {false};
  t.endpoints.push_back({EndRef{0, CurveEnd::Start}, p0});
  t.endpoints.push_back({EndRef{0, CurveEnd::Finish}, p1});
  return t;
}

}  // namespace elastica
