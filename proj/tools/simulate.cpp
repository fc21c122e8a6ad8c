#include <cstdlib>
#include <filesystem>
#include <future>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "CLI11.hpp"

#include "elastica/export.hpp"
#include "elastica/scene_io.hpp"
#include "elastica/scenes.hpp"
#include "elastica/solver.hpp"

namespace {

using namespace elastica;

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("ELASTICA_LOG");
  if (!env) return LogLevel::Info;
  const std::string v = env;
  if (v == "quiet") return LogLevel::Quiet;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Info;
}

struct Options {
  std::string scene = "steiner_triod";
  double mu = -1.0;
  int grid_n = -1;
  double dt = -1.0;
  double t_end = -1.0;
  int reparam_cadence = -1;
  double eps = -1.0;
  double radius = -1.0;
  std::string out = "out";
  int frames_every = 0;
  std::string format = "csv";
  std::string sweep;
};

Scene load(const Options& opt) {
  Scene scene;
  if (std::filesystem::exists(opt.scene) || opt.scene.ends_with(".json"))
    scene = load_scene_file(opt.scene);
  else
    scene = make_scene(opt.scene, opt.eps > 0 ? opt.eps : opt.radius);
  if (opt.mu > 0) scene.params.mu = opt.mu;
  if (opt.grid_n > 0) scene.params.grid_n = opt.grid_n;
  if (opt.dt > 0) scene.params.dt = opt.dt;
  if (opt.t_end > 0) scene.params.t_end = opt.t_end;
  if (opt.reparam_cadence >= 0) scene.params.reparam_cadence = opt.reparam_cadence;
  return scene;
}

int exit_code(RunVerdict v) {
  switch (v) {
    case RunVerdict::ReachedTEnd: return 0;
    case RunVerdict::Inadmissible: return 2;
    case RunVerdict::LengthCollapse: return 3;
    case RunVerdict::AngleDegeneracy: return 4;
    case RunVerdict::SolverFailure: return 5;
  }
  return 1;
}

FrameFormat parse_format(const std::string& f) {
  if (f == "csv") return FrameFormat::Csv;
  if (f == "svg") return FrameFormat::Svg;
  return FrameFormat::Both;
}

int run_one(const Options& opt, const std::string& out_dir, LogLevel log) {
  Scene scene;
  try {
    scene = load(opt);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }

  RunConfig rc;
  rc.params = scene.params;
  rc.frames_every = opt.frames_every;

  RunResult result;
  try {
    result = run(scene.build(), rc);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }

  std::filesystem::create_directories(out_dir);
  write_monitor_csv(out_dir + "/monitors.csv", result.series);
  export_frames(out_dir + "/frames", result.frames, parse_format(opt.format));

  if (log != LogLevel::Quiet) {
    fmt::print(stderr, "scene {}: verdict {} after {} steps, t = {}\n", scene.name,
               to_string(result.verdict), result.accepted_steps, result.final_state.time());
    fmt::print(stderr, "  {}\n", result.message);
    fmt::print(stderr, "  E: {} -> {}\n", result.initial_energy,
               result.series.empty() ? 0.0 : result.series.back().energy);
    fmt::print(stderr, "  output: {}\n", out_dir);
  }
  if (log == LogLevel::Debug) {
    for (size_t i = 0; i < result.series.size(); i += std::max<size_t>(1, result.series.size() / 20)) {
      const auto& r = result.series[i];
      fmt::print(stderr, "  t={:<10.6g} E={:<12.8g} len={:<10.6g} third={:.3g}\n", r.time,
                 r.energy, r.total_length, r.max_third_order_residual);
    }
  }
  return exit_code(result.verdict);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos <= s.size()) {
    const size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

int run_sweep(const Options& base, LogLevel log) {
  const auto eq = base.sweep.find('=');
  if (eq == std::string::npos) {
    fmt::print(stderr, "error: --sweep expects <param>=<v1,v2,...>\n");
    return 1;
  }
  const std::string key = base.sweep.substr(0, eq);
  const auto values = split(base.sweep.substr(eq + 1), ',');
  if (values.empty()) {
    fmt::print(stderr, "error: --sweep got an empty value list\n");
    return 1;
  }

  std::vector<std::future<int>> jobs;
  for (const auto& value : values) {
    Options opt = base;
    try {
      if (key == "mu") opt.mu = std::stod(value);
      else if (key == "dt") opt.dt = std::stod(value);
      else if (key == "t-end") opt.t_end = std::stod(value);
      else if (key == "grid-n") opt.grid_n = std::stoi(value);
      else if (key == "eps") opt.eps = std::stod(value);
      else if (key == "radius") opt.radius = std::stod(value);
      else {
        fmt::print(stderr, "error: unknown sweep parameter '{}'\n", key);
        return 1;
      }
    } catch (const std::exception&) {
      fmt::print(stderr, "error: bad sweep value '{}' for '{}'\n", value, key);
      return 1;
    }
    const std::string dir = fmt::format("{}/{}_{}", base.out, key, value);
    jobs.push_back(std::async(std::launch::async, run_one, opt, dir, log));
  }
  int worst = 0;
  for (auto& j : jobs) worst = std::max(worst, j.get());
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic flow of planar curve networks with triple junctions"};
  Options opt;
  app.add_option("--scene", opt.scene,
                 "built-in scene name or path to a scene json file")
      ->capture_default_str();
  app.add_option("--mu", opt.mu, "length-penalty coefficient override");
  app.add_option("--grid-n", opt.grid_n, "grid intervals per curve override");
  app.add_option("--dt", opt.dt, "time step override");
  app.add_option("--t-end", opt.t_end, "final time override");
  app.add_option("--reparam-cadence", opt.reparam_cadence,
                 "constant-speed reparametrization cadence (0 disables)");
  app.add_option("--eps", opt.eps, "theta_eps scene parameter");
  app.add_option("--radius", opt.radius, "circle scene radius");
  app.add_option("--out", opt.out, "output directory")->capture_default_str();
  app.add_option("--frames-every", opt.frames_every,
                 "frame snapshot cadence in accepted steps (0 = first/last only)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", opt.format, "frame format")
      ->check(CLI::IsMember({"csv", "svg", "both"}))
      ->capture_default_str();
  app.add_option("--sweep", opt.sweep, "fan out runs over <param>=<v1,v2,...>");
  app.set_version_flag("--version", "1.0.0");
  CLI11_PARSE(app, argc, argv);

  const LogLevel log = log_level();
  if (!opt.sweep.empty()) return run_sweep(opt, log);
  return run_one(opt, opt.out, log);
}
