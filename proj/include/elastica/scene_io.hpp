#pragma once

#include <string>

#include "elastica/scenes.hpp"
#include "elastica/state.hpp"

namespace elastica {

/// Scene JSON, schema version 1:
/// {
///   "schema": 1, "name": "...",
///   "curves": [ {"primitive": {"type": "segment"|"arc"|"spline", ...}, "closed": bool}, ... ],
///   "junctions": [ [[curve, "start"|"finish"], x3], ... ],
///   "endpoints": [ {"curve": i, "end": "start"|"finish", "position": [x, y]}, ... ],
///   "params": { "mu": .., "grid_n": .., "dt": .., "t_end": .., ... }
/// }
/// Unknown schema versions and malformed fields throw SceneError with the
/// offending field in the message.
Scene load_scene_json(const std::string& json_text);
Scene load_scene_file(const std::string& path);
std::string scene_to_json(const Scene& scene);

/// State serialization (doubles round-trip exactly; deserialized state is
/// bit-identical).
std::string state_to_json(const NetworkState& state);
NetworkState state_from_json(const std::string& json_text);

}  // namespace elastica
