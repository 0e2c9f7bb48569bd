#pragma once

#include <string>
#include <vector>

#include "crowdflow/tracker.hpp"
#include "crowdflow/types.hpp"

namespace crowdflow {

// JSONL writers for the CLI surfaces. Numbers are emitted in shortest
// round-trip form, so identical values always serialize to identical bytes.

// {"frame":12,"live":16,"total":31,"fps":24.8,"density":"medium crowd",
//  "ids":[3,4,7]}; the fps key is omitted when include_fps is false (it is
// the one wall-clock-dependent field).
std::string frame_stats_line(const FrameStats& stats, bool include_fps = true);

// Machine-readable stand-in for on-frame drawing: one box record per active
// track plus one label record per frame carrying the density text and its
// anchor point.
struct OverlayAnchor {
  double x = 80.0;
  double y = 300.0;
};
std::vector<std::string> overlay_lines(const FrameStats& stats,
                                       const std::map<std::int64_t, Track>& tracks,
                                       OverlayAnchor anchor = {});

// Debug form of one tracker update.
std::string update_result_to_json(const FrameUpdateResult& update);

}  // namespace crowdflow
