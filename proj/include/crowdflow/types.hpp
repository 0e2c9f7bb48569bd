#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crowdflow {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned box in image coordinates (origin top-left), stored as the
// corner pair (x1,y1)-(x2,y2). Valid boxes have x1 <= x2, y1 <= y2 and all
// coordinates finite; zero-area boxes are allowed.
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
};

// ((x1+x2)/2, (y1+y2)/2). Callers must pass a valid box.
Point centroid(const BoundingBox& box);

// nullopt when the box invariants hold, otherwise a description naming the
// violated field.
std::optional<std::string> validate_box(const BoundingBox& box);

// One candidate object in one frame, already past parsing.
struct Detection {
  std::int64_t frame_index = 0;
  BoundingBox box;
  double confidence = 0.0;  // in [0, 1]
  std::string class_label;
};

struct TrackerConfig {
  int max_disappeared = 40;    // consecutive missed frames a track survives
  double max_distance = 50.0;  // px; largest centroid distance that can match
};
std::optional<std::string> validate_config(const TrackerConfig& config);

// A persistent identity maintained by the tracker.
struct Track {
  std::int64_t id = 0;
  Point centroid;
  BoundingBox last_box;
  int disappeared = 0;  // consecutive frames without a match
  std::int64_t last_seen_frame = 0;
};

enum class DensityLevel { Normal, Medium, High };

// Display labels: "normal crowd" / "medium crowd" / "high crowd".
std::string_view density_label(DensityLevel level);
std::optional<DensityLevel> density_from_label(std::string_view label);

struct DensityConfig {
  int medium_threshold = 15;  // live < medium_threshold            -> Normal
  int high_threshold = 25;    // medium_threshold <= live <= high   -> Medium
};                            // live > high_threshold              -> High
std::optional<std::string> validate_config(const DensityConfig& config);

// Per-frame output record of the tracking pipeline.
struct FrameStats {
  std::int64_t frame_index = 0;
  std::size_t live_count = 0;   // == active_track_ids.size()
  std::size_t total_count = 0;  // unique ids ever issued; non-decreasing
  double fps = 0.0;
  bool fps_warming_up = false;  // fps asked for before any time elapsed
  DensityLevel density = DensityLevel::Normal;
  std::vector<std::int64_t> active_track_ids;  // ascending
};

}  // namespace crowdflow
