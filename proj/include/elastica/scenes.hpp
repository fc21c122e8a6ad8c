#pragma once

#include <map>
#include <string>
#include <vector>

#include "elastica/params.hpp"
#include "elastica/primitives.hpp"
#include "elastica/topology.hpp"
#include "elastica/state.hpp"

namespace elastica {

/// A scene bundles topology, curve primitives, and flow parameters.
struct Scene {
  std::string name;
  NetworkTopology topology;
  std::vector<PrimitivePtr> primitives;
  FlowParams params;

  NetworkState build() const { return build_state(topology, primitives, params.grid_n); }
};

/// Built-in scenes (string key, optional numeric argument):
///   steiner_triod          three unit segments at 120 degrees (stationary)
///   perturbed_triod        3-fold symmetric normal bump on the Steiner triod
///   theta_symmetric        smooth two-junction theta with 120-degree junctions
///   theta_eps(eps)         two unit-circle arcs of length eps plus the chord
///   circle(r)              closed circle of radius r
///   segment                unit segment with both ends pinned (stationary)
///   bad_triod_90           segments at 90/90/180 degrees (inadmissible)
Scene make_scene(const std::string& name, double arg = 0.0);

std::vector<std::string> builtin_scene_names();

/// Energy of the degenerate theta family: 2 eps + mu (2 eps + sqrt(2) sqrt(1 - cos eps)).
double theta_eps_energy(double eps, double mu);

}  // namespace elastica
