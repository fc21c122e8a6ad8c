#include "elastica/export.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

namespace elastica {

namespace {

// Shortest round-trip representation; identical runs print identical bytes.
std::string num(double v) { return fmt::format("{}", v); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  out << content;
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

}  // namespace

std::string monitor_csv(const std::vector<MonitorReport>& series) {
  const size_t curves = series.empty() ? 0 : series.front().curve_lengths.size();
  std::string out = "time,dt,energy,total_length";
  for (size_t c = 0; c < curves; ++c) out += fmt::format(",len_{}", c);
  out +=
      ",k_l2,ks_l2,kss_l2,min_speed,max_speed,concurrency_gap,max_junction_abs_k,"
      "max_endpoint_abs_k,max_third_order_residual,min_rho_hat,min_det_m,"
      "energy_decrease_rate,dissipation_quadrature,curvature_evolution_residual,"
      "ds_evolution_residual,junction_kinematics_residual,length_collapse,angle_degeneracy\n";
  for (const auto& r : series) {
    out += num(r.time) + "," + num(r.dt) + "," + num(r.energy) + "," + num(r.total_length);
    for (size_t c = 0; c < curves; ++c)
      out += "," + (c < r.curve_lengths.size() ? num(r.curve_lengths[c]) : std::string("nan"));
    out += "," + num(r.k_l2) + "," + num(r.ks_l2) + "," + num(r.kss_l2);
    out += "," + num(r.min_speed) + "," + num(r.max_speed);
    out += "," + num(r.concurrency_gap) + "," + num(r.max_junction_abs_k);
    out += "," + num(r.max_endpoint_abs_k) + "," + num(r.max_third_order_residual);
    out += "," + num(r.min_rho_hat) + "," + num(r.min_det_m);
    out += "," + num(r.energy_decrease_rate) + "," + num(r.dissipation_quadrature);
    out += "," + num(r.curvature_evolution_residual) + "," + num(r.ds_evolution_residual);
    out += "," + num(r.junction_kinematics_residual);
    out += fmt::format(",{},{}\n", r.length_collapse ? 1 : 0, r.angle_degeneracy ? 1 : 0);
  }
  return out;
}

void write_monitor_csv(const std::string& path, const std::vector<MonitorReport>& series) {
  write_file(path, monitor_csv(series));
}

std::string frame_csv(const NetworkState& state) {
  std::string out = "curve,x,y\n";
  for (int c = 0; c < state.curve_count(); ++c)
    for (int j = 0; j <= state.grid_n(); ++j) {
      const Vec2 p = state.point(c, j);
      out += fmt::format("{},{},{}\n", c, num(p.x()), num(p.y()));
    }
  return out;
}

std::string frame_svg(const NetworkState& state) {
  Vec2 lo(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  for (const auto& p : state.nodes()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec2 span = hi - lo;
  const double margin = 0.05 * std::max({span.x(), span.y(), 1e-9});
  const double x0 = lo.x() - margin, y0 = lo.y() - margin;
  const double w = span.x() + 2 * margin, h = span.y() + 2 * margin;
  const double stroke = 0.004 * std::max(w, h);

  // SVG's y axis points down; mirror by emitting y' = (y0 + h) - (y - y0).
  auto flip = [&](double y) { return 2 * y0 + h - y; };
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" "
      "width=\"800\" height=\"{}\">\n",
      num(x0), num(y0), num(w), num(h), num(800.0 * h / w));
  for (int c = 0; c < state.curve_count(); ++c) {
    out += fmt::format(
        "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{}\" points=\"", num(stroke));
    for (int j = 0; j <= state.grid_n(); ++j) {
      const Vec2 p = state.point(c, j);
      out += fmt::format("{},{} ", num(p.x()), num(flip(p.y())));
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

int export_frames(const std::string& dir, const std::vector<NetworkState>& frames,
                  FrameFormat format) {
  std::filesystem::create_directories(dir);
  int written = 0;
  for (size_t i = 0; i < frames.size(); ++i) {
    if (format == FrameFormat::Csv || format == FrameFormat::Both)
      write_file(fmt::format("{}/frame_{:06}.csv", dir, i), frame_csv(frames[i]));
    if (format == FrameFormat::Svg || format == FrameFormat::Both)
      write_file(fmt::format("{}/frame_{:06}.svg", dir, i), frame_svg(frames[i]));
    ++written;
  }
  return written;
}

}  // namespace elastica
