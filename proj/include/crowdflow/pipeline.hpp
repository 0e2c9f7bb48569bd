#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowdflow/analytics.hpp"
#include "crowdflow/ingest.hpp"
#include "crowdflow/tracker.hpp"
#include "crowdflow/types.hpp"

namespace crowdflow {

struct PipelineConfig {
  TrackerConfig tracker;
  DensityConfig density;
  // When set, the meter's elapsed time is total_frames / replay_fps instead
  // of the wall clock, which makes the fps column deterministic.
  std::optional<double> replay_fps;
  double min_confidence = 0.5;
  std::string target_label = "person";
};

struct FrameOutput {
  FrameStats stats;
  FrameUpdateResult update;
};

// Drives ingest -> tracker -> analytics over an ordered stream of frame
// groups. Frames absent between two groups are processed as empty frames so
// disappearance countdowns keep advancing; the sink sees every frame from
// the first group's index onward, in order.
class StreamProcessor {
 public:
  using Sink = std::function<void(const FrameOutput&)>;

  // Throws std::invalid_argument on an invalid config.
  explicit StreamProcessor(const PipelineConfig& config);

  // Filters the group's records, fills any gap frames, updates the tracker
  // and calls the sink once per processed frame.
  void process_group(const FrameGroup& group, const Sink& sink);

  std::size_t frames_processed() const { return frames_processed_; }
  const CentroidTracker& tracker() const { return tracker_; }

  // Cumulative fps over the whole run; 0.0 before any frame was processed.
  double final_fps() const;

 private:
  void process_frame(std::int64_t frame_index,
                     std::span<const Detection> detections, const Sink& sink);

  PipelineConfig config_;
  CentroidTracker tracker_;
  FpsMeter meter_;
  std::optional<std::int64_t> last_frame_;
  std::size_t frames_processed_ = 0;
};

// Runs a whole parsed stream through a fresh processor and collects the
// per-frame outputs.
std::vector<FrameOutput> run_pipeline(std::span<const FrameGroup> groups,
                                      const PipelineConfig& config);

}  // namespace crowdflow
