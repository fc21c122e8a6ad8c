#include "elastica/scene_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

namespace elastica {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SceneError(fmt::format("scene json: {}: {}", where, what));
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, fmt::format("missing field '{}'", key));
  return *it;
}

double need_number(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number()) fail(where, fmt::format("field '{}' must be a number", key));
  return v.get<double>();
}

int need_int(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer()) fail(where, fmt::format("field '{}' must be an integer", key));
  return v.get<int>();
}

Vec2 parse_vec2(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(where, "expected [x, y]");
  return Vec2(v[0].get<double>(), v[1].get<double>());
}

CurveEnd parse_end(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "start") return CurveEnd::Start;
    if (s == "finish") return CurveEnd::Finish;
  }
  fail(where, "curve end must be \"start\" or \"finish\"");
}

json vec2_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

PrimitivePtr parse_primitive(const json& p, const std::string& where) {
  const json& tv = need(p, "type", where);
  if (!tv.is_string()) fail(where, "field 'type' must be a string");
  const auto type = tv.get<std::string>();
  if (type == "segment") {
    return std::make_shared<Segment>(parse_vec2(need(p, "p0", where), where + ".p0"),
                                     parse_vec2(need(p, "p1", where), where + ".p1"));
  }
  if (type == "arc") {
    return std::make_shared<Arc>(parse_vec2(need(p, "center", where), where + ".center"),
                                 need_number(p, "radius", where),
                                 need_number(p, "angle0", where),
                                 need_number(p, "angle1", where));
  }
  if (type == "spline") {
    const json& pts = need(p, "points", where);
    if (!pts.is_array() || pts.size() < 2) fail(where, "'points' must list at least 2 points");
    std::vector<Vec2> control;
    for (size_t i = 0; i < pts.size(); ++i)
      control.push_back(parse_vec2(pts[i], fmt::format("{}.points[{}]", where, i)));
    return std::make_shared<CubicSpline>(std::move(control));
  }
  fail(where, fmt::format("unknown primitive type '{}'", type));
}

json primitive_json(const PrimitivePtr& p) {
  if (const auto* s = dynamic_cast<const Segment*>(p.get()))
    return {{"type", "segment"}, {"p0", vec2_json(s->p0())}, {"p1", vec2_json(s->p1())}};
  if (const auto* a = dynamic_cast<const Arc*>(p.get()))
    return {{"type", "arc"},
            {"center", vec2_json(a->center())},
            {"radius", a->radius()},
            {"angle0", a->angle0()},
            {"angle1", a->angle1()}};
  if (const auto* c = dynamic_cast<const CubicSpline*>(p.get())) {
    json pts = json::array();
    for (const auto& v : c->control()) pts.push_back(vec2_json(v));
    return {{"type", "spline"}, {"points", std::move(pts)}};
  }
  // Analytic primitives have no closed form in the schema; store a dense
  // sample as an interpolating spline.
  json pts = json::array();
  const int n = 128;
  for (int j = 0; j <= n; ++j)
    pts.push_back(vec2_json(p->eval(static_cast<double>(j) / n)));
  return {{"type", "spline"}, {"points", std::move(pts)}};
}

void parse_params(const json& j, FlowParams& params, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto opt = [&](const char* key, double& slot) {
    if (const auto it = j.find(key); it != j.end()) {
      if (!it->is_number()) fail(where, fmt::format("field '{}' must be a number", key));
      slot = it->get<double>();
    }
  };
  auto opt_int = [&](const char* key, int& slot) {
    if (const auto it = j.find(key); it != j.end()) {
      if (!it->is_number_integer()) fail(where, fmt::format("field '{}' must be an integer", key));
      slot = it->get<int>();
    }
  };
  opt("mu", params.mu);
  opt_int("grid_n", params.grid_n);
  opt("dt", params.dt);
  opt("t_end", params.t_end);
  opt_int("reparam_cadence", params.reparam_cadence);
  opt("min_length_threshold", params.min_length_threshold);
  opt("min_sin_angle_threshold", params.min_sin_angle_threshold);
  if (const auto it = j.find("tolerances"); it != j.end()) {
    const json& t = *it;
    const std::string tw = where + ".tolerances";
    if (!t.is_object()) fail(tw, "expected an object");
    auto topt = [&](const char* key, double& slot) {
      if (const auto f = t.find(key); f != t.end()) {
        if (!f->is_number()) fail(tw, fmt::format("field '{}' must be a number", key));
        slot = f->get<double>();
      }
    };
    topt("adm_curvature", params.tol.adm_curvature);
    topt("adm_third_order", params.tol.adm_third_order);
    topt("adm_second_order", params.tol.adm_second_order);
    topt("energy_increase_rel", params.tol.energy_increase_rel);
    topt("step_third_order", params.tol.step_third_order);
    topt("step_curvature", params.tol.step_curvature);
    topt("det_m_min", params.tol.det_m_min);
    topt("min_speed", params.tol.min_speed);
  }
}

json params_json(const FlowParams& p) {
  return {{"mu", p.mu},
          {"grid_n", p.grid_n},
          {"dt", p.dt},
          {"t_end", p.t_end},
          {"reparam_cadence", p.reparam_cadence},
          {"min_length_threshold", p.min_length_threshold},
          {"min_sin_angle_threshold", p.min_sin_angle_threshold},
          {"tolerances",
           {{"adm_curvature", p.tol.adm_curvature},
            {"adm_third_order", p.tol.adm_third_order},
            {"adm_second_order", p.tol.adm_second_order},
            {"energy_increase_rel", p.tol.energy_increase_rel},
            {"step_third_order", p.tol.step_third_order},
            {"step_curvature", p.tol.step_curvature},
            {"det_m_min", p.tol.det_m_min},
            {"min_speed", p.tol.min_speed}}}};
}

NetworkTopology parse_topology(const json& root, int curve_count,
                               const std::vector<bool>& closed) {
  NetworkTopology topo;
  topo.curve_count = curve_count;
  topo.closed = closed;
  if (const auto it = root.find("junctions"); it != root.end()) {
    if (!it->is_array()) fail("junctions", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const std::string where = fmt::format("junctions[{}]", i);
      const json& jj = (*it)[i];
      if (!jj.is_array() || jj.size() != 3) fail(where, "expected three [curve, end] pairs");
      Junction junction;
      for (int e = 0; e < 3; ++e) {
        const json& pair = jj[e];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer())
          fail(fmt::format("{}[{}]", where, e), "expected [curve index, \"start\"|\"finish\"]");
        junction.ends[e] = EndRef{pair[0].get<int>(),
                                  parse_end(pair[1], fmt::format("{}[{}]", where, e))};
      }
      topo.junctions.push_back(junction);
    }
  }
  if (const auto it = root.find("endpoints"); it != root.end()) {
    if (!it->is_array()) fail("endpoints", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const std::string where = fmt::format("endpoints[{}]", i);
      const json& ej = (*it)[i];
      FixedEndpoint ep;
      ep.end = EndRef{need_int(ej, "curve", where), parse_end(need(ej, "end", where), where)};
      ep.position = parse_vec2(need(ej, "position", where), where + ".position");
      topo.endpoints.push_back(ep);
    }
  }
  try {
    topo.validate();
  } catch (const InvalidTopology& e) {
    fail("topology", e.what());
  }
  return topo;
}

json topology_json(const NetworkTopology& topo) {
  json junctions = json::array();
  for (const auto& j : topo.junctions) {
    json ends = json::array();
    for (const auto& e : j.ends) ends.push_back(json::array({e.curve, to_string(e.end)}));
    junctions.push_back(std::move(ends));
  }
  json endpoints = json::array();
  for (const auto& ep : topo.endpoints)
    endpoints.push_back({{"curve", ep.end.curve},
                         {"end", to_string(ep.end.end)},
                         {"position", vec2_json(ep.position)}});
  return {{"junctions", std::move(junctions)}, {"endpoints", std::move(endpoints)}};
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneError(fmt::format("scene json: {}", e.what()));
  }
}

}  // namespace

Scene load_scene_json(const std::string& json_text) {
  const json root = parse_text(json_text);
  if (!root.is_object()) fail("root", "expected an object");
  const int schema = need_int(root, "schema", "root");
  if (schema != 1) fail("schema", fmt::format("unsupported schema version {}", schema));

  Scene scene;
  if (const auto it = root.find("name"); it != root.end() && it->is_string())
    scene.name = it->get<std::string>();
  else
    scene.name = "scene";

  const json& curves = need(root, "curves", "root");
  if (!curves.is_array() || curves.empty()) fail("curves", "expected a non-empty array");
  std::vector<bool> closed;
  for (size_t i = 0; i < curves.size(); ++i) {
    const std::string where = fmt::format("curves[{}]", i);
    const json& c = curves[i];
    scene.primitives.push_back(
        parse_primitive(need(c, "primitive", where), where + ".primitive"));
    bool is_closed = false;
    if (const auto it = c.find("closed"); it != c.end()) {
      if (!it->is_boolean()) fail(where, "field 'closed' must be a boolean");
      is_closed = it->get<bool>();
    }
    closed.push_back(is_closed);
  }

  scene.topology = parse_topology(root, static_cast<int>(curves.size()), closed);
  if (const auto it = root.find("params"); it != root.end())
    parse_params(*it, scene.params, "params");
  try {
    scene.params.validate();
  } catch (const InvalidParams& e) {
    fail("params", e.what());
  }
  return scene;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError(fmt::format("cannot open scene file '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scene_json(ss.str());
}

std::string scene_to_json(const Scene& scene) {
  json curves = json::array();
  for (int c = 0; c < scene.topology.curve_count; ++c)
    curves.push_back({{"primitive", primitive_json(scene.primitives[c])},
                      {"closed", static_cast<bool>(scene.topology.closed[c])}});
  json root = {{"schema", 1}, {"name", scene.name}, {"curves", std::move(curves)},
               {"params", params_json(scene.params)}};
  const json topo = topology_json(scene.topology);
  root["junctions"] = topo["junctions"];
  root["endpoints"] = topo["endpoints"];
  return root.dump(2);
}

std::string state_to_json(const NetworkState& state) {
  const auto& topo = state.topology();
  json closed = json::array();
  for (int c = 0; c < topo.curve_count; ++c) closed.push_back(static_cast<bool>(topo.closed[c]));
  json nodes = json::array();
  for (const auto& p : state.nodes()) nodes.push_back(vec2_json(p));
  json root = {{"schema", 1},
               {"time", state.time()},
               {"grid_n", state.grid_n()},
               {"curve_count", topo.curve_count},
               {"closed", std::move(closed)},
               {"nodes", std::move(nodes)}};
  const json tj = topology_json(topo);
  root["junctions"] = tj["junctions"];
  root["endpoints"] = tj["endpoints"];
  return root.dump(2);
}

NetworkState state_from_json(const std::string& json_text) {
  const json root = parse_text(json_text);
  if (!root.is_object()) fail("root", "expected an object");
  const int schema = need_int(root, "schema", "root");
  if (schema != 1) fail("schema", fmt::format("unsupported schema version {}", schema));
  const int curve_count = need_int(root, "curve_count", "root");
  const json& cj = need(root, "closed", "root");
  if (!cj.is_array() || static_cast<int>(cj.size()) != curve_count)
    fail("closed", "expected one flag per curve");
  std::vector<bool> closed;
  for (const auto& v : cj) {
    if (!v.is_boolean()) fail("closed", "expected booleans");
    closed.push_back(v.get<bool>());
  }
  const NetworkTopology topo = parse_topology(root, curve_count, closed);
  const int grid_n = need_int(root, "grid_n", "root");

  NetworkState state(topo, grid_n);
  const json& nodes = need(root, "nodes", "root");
  if (!nodes.is_array() || static_cast<int>(nodes.size()) != state.node_count())
    fail("nodes", fmt::format("expected {} pool nodes", state.node_count()));
  auto& pool = state.nodes();
  for (size_t i = 0; i < pool.size(); ++i)
    pool[i] = parse_vec2(nodes[i], fmt::format("nodes[{}]", i));
  state.set_time(need_number(root, "time", "root"));
  return state;
}

}  // namespace elastica
