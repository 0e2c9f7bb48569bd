#include "crowdflow/pipeline.hpp"

#include <stdexcept>

namespace crowdflow {

StreamProcessor::StreamProcessor(const PipelineConfig& config)
    : config_(config), tracker_(config.tracker) {
  if (auto violation = validate_config(config.density)) {
    throw std::invalid_argument("density config: " + *violation);
  }
  if (config.replay_fps.has_value() && !(*config.replay_fps > 0.0)) {
    throw std::invalid_argument("replay fps must be positive");
  }
  if (config.min_confidence < 0.0 || config.min_confidence > 1.0) {
    throw std::invalid_argument("min confidence must be in [0, 1]");
  }
}

void StreamProcessor::process_frame(std::int64_t frame_index,
                                    std::span<const Detection> detections,
                                    const Sink& sink) {
  FrameOutput out;
  out.update = tracker_.update(frame_index, detections);
  meter_.tick();
  ++frames_processed_;
  if (config_.replay_fps.has_value()) {
    meter_.set_elapsed_override(static_cast<double>(meter_.total_frames()) /
                                *config_.replay_fps);
  }
  out.stats = assemble_frame_stats(frame_index, tracker_, meter_,
                                   FpsMeter::Clock::now(), config_.density);
  sink(out);
}

void StreamProcessor::process_group(const FrameGroup& group, const Sink& sink) {
  if (last_frame_.has_value() && group.frame_index <= *last_frame_) {
    throw std::invalid_argument("frame group " +
                                std::to_string(group.frame_index) +
                                " not ascending");
  }
  const std::vector<Detection> detections = filter_persons(
      group.records, config_.min_confidence, config_.target_label);

  // Gap frames between the previous group and this one carry zero
  // detections but still advance the disappearance countdown.
  if (last_frame_.has_value()) {
    for (std::int64_t gap = *last_frame_ + 1; gap < group.frame_index; ++gap) {
      process_frame(gap, {}, sink);
    }
  }
  process_frame(group.frame_index, detections, sink);
  last_frame_ = group.frame_index;
}

double StreamProcessor::final_fps() const {
  if (meter_.total_frames() == 0) return 0.0;
  try {
    return meter_.fps(FpsMeter::Clock::now());
  } catch (const std::domain_error&) {
    return 0.0;
  }
}

std::vector<FrameOutput> run_pipeline(std::span<const FrameGroup> groups,
                                      const PipelineConfig& config) {
  StreamProcessor processor(config);
  std::vector<FrameOutput> outputs;
  for (const auto& group : groups) {
    processor.process_group(group,
                            [&](const FrameOutput& out) { outputs.push_back(out); });
  }
  return outputs;
}

}  // namespace crowdflow
