#include "crowdflow/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace crowdflow {

void FpsMeter::set_elapsed_override(double seconds) {
  if (!(seconds >= 0.0) || !std::isfinite(seconds)) {
    throw std::invalid_argument("elapsed override must be non-negative");
  }
  elapsed_override_ = seconds;
}

double FpsMeter::elapsed_seconds(Clock::time_point now) const {
  if (elapsed_override_.has_value()) return *elapsed_override_;
  return std::chrono::duration<double>(now - start_).count();
}

double FpsMeter::fps(Clock::time_point now) const {
  const double elapsed = elapsed_seconds(now);
  if (elapsed <= 0.0) {
    throw std::domain_error("fps undefined before time advances");
  }
  return static_cast<double>(total_frames_) / elapsed;
}

DensityLevel classify_density(std::size_t live_count,
                              const DensityConfig& config) {
  const auto live = static_cast<std::int64_t>(live_count);
  if (live < config.medium_threshold) return DensityLevel::Normal;
  if (live <= config.high_threshold) return DensityLevel::Medium;
  return DensityLevel::High;
}

FrameStats assemble_frame_stats(std::int64_t frame_index,
                                const CentroidTracker& tracker,
                                const FpsMeter& meter,
                                FpsMeter::Clock::time_point now,
                                const DensityConfig& density_config) {
  FrameStats stats;
  stats.frame_index = frame_index;
  stats.live_count = tracker.live_count();
  stats.total_count = tracker.total_count();
  try {
    stats.fps = meter.fps(now);
  } catch (const std::domain_error&) {
    stats.fps = 0.0;
    stats.fps_warming_up = true;
  }
  stats.density = classify_density(stats.live_count, density_config);
  stats.active_track_ids.reserve(tracker.tracks().size());
  for (const auto& [id, track] : tracker.tracks()) {
    stats.active_track_ids.push_back(id);
  }
  return stats;
}

}  // namespace crowdflow
