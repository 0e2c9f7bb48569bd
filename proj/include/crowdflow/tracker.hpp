#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "crowdflow/types.hpp"

namespace crowdflow {

struct TrackMatch {
  std::int64_t track_id = 0;
  std::size_t detection_index = 0;
  double distance = 0.0;
};

// What one tracker update did, exposed so the assignment itself is testable
// and serialisable for debug output.
struct FrameUpdateResult {
  std::vector<TrackMatch> matches;
  std::vector<std::int64_t> new_ids;      // in registration order
  std::vector<std::int64_t> retired_ids;  // ascending
};

// Centroid tracker. Detections are associated to existing tracks greedily by
// ascending Euclidean centroid distance, ties broken by (track id, detection
// index); pairs farther than max_distance never match. Unmatched detections
// register new tracks with ids issued from 0 upward and never reused.
// Unmatched tracks accumulate a disappearance count and are retired once it
// exceeds max_disappeared, so a track survives exactly max_disappeared
// consecutive missed frames.
//
// Single-owner state machine: updates must be called one at a time with
// strictly increasing frame indices.
class CentroidTracker {
 public:
  // Throws std::invalid_argument if the config violates its invariants.
  explicit CentroidTracker(const TrackerConfig& config);

  // Advances the tracker by one frame. Detections must already be filtered
  // to the target class. Throws std::invalid_argument on a non-increasing
  // frame index or a detection with an invalid box.
  FrameUpdateResult update(std::int64_t frame_index,
                           std::span<const Detection> detections);

  // Tracks currently alive, including those inside the disappearance grace
  // period.
  std::size_t live_count() const { return tracks_.size(); }

  // Unique ids ever issued; non-decreasing.
  std::size_t total_count() const { return total_registered_; }

  const std::map<std::int64_t, Track>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return config_; }
  std::int64_t next_id() const { return next_id_; }

 private:
  std::int64_t register_track(const Detection& detection,
                              std::int64_t frame_index);

  std::map<std::int64_t, Track> tracks_;
  std::int64_t next_id_ = 0;
  std::size_t total_registered_ = 0;
  std::optional<std::int64_t> last_frame_;
  TrackerConfig config_;
};

}  // namespace crowdflow
