#pragma once

#include <string>
#include <vector>

#include "elastica/monitors.hpp"
#include "elastica/solver.hpp"

namespace elastica {

/// Monitor series as CSV. Header names the per-curve length columns len_0..;
/// numbers print round-trip exactly, so identical runs give byte-identical files.
std::string monitor_csv(const std::vector<MonitorReport>& series);
void write_monitor_csv(const std::string& path, const std::vector<MonitorReport>& series);

enum class FrameFormat { Csv, Svg, Both };

/// Writes one file per frame into dir: frame_000000.csv (columns curve,x,y,
/// one row per node) and/or frame_000000.svg (one polyline per curve, viewBox
/// auto-fitted with a fixed 5% margin). Returns the number of frames written.
int export_frames(const std::string& dir, const std::vector<NetworkState>& frames,
                  FrameFormat format);

std::string frame_svg(const NetworkState& state);
std::string frame_csv(const NetworkState& state);

}  // namespace elastica
