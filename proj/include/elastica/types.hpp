#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace elastica {

using Vec2 = Eigen::Vector2d;

/// Counter-clockwise rotation by pi/2; fixes the normal convention nu = rot90(tau).
inline Vec2 rot90(const Vec2& v) { return Vec2(-v.y(), v.x()); }

struct InvalidTopology : std::runtime_error {
  explicit InvalidTopology(const std::string& what) : std::runtime_error(what) {}
};
struct InvalidParams : std::runtime_error {
  explicit InvalidParams(const std::string& what) : std::runtime_error(what) {}
};
struct InvalidState : std::runtime_error {
  explicit InvalidState(const std::string& what) : std::runtime_error(what) {}
};
struct SceneError : std::runtime_error {
  explicit SceneError(const std::string& what) : std::runtime_error(what) {}
};
struct DegenerateJunction : std::runtime_error {
  explicit DegenerateJunction(const std::string& what) : std::runtime_error(what) {}
};
struct InadmissibleState : std::runtime_error {
  explicit InadmissibleState(const std::string& what) : std::runtime_error(what) {}
};
struct StepFailure : std::runtime_error {
  explicit StepFailure(const std::string& what) : std::runtime_error(what) {}
};
struct InstabilityError : std::runtime_error {
  explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};
struct GridMismatch : std::runtime_error {
  explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace elastica
