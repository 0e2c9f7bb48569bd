#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "crowdflow/tracker.hpp"
#include "crowdflow/types.hpp"

namespace crowdflow {

// Cumulative throughput meter: frames processed divided by seconds elapsed
// since construction. Replay from a file has no camera clock, so the elapsed
// time can be overridden with a synthetic value; the override wins whenever
// it is set.
class FpsMeter {
 public:
  using Clock = std::chrono::steady_clock;

  FpsMeter() : start_(Clock::now()) {}
  explicit FpsMeter(Clock::time_point start) : start_(start) {}

  void tick() { ++total_frames_; }
  std::size_t total_frames() const { return total_frames_; }

  // Throws std::invalid_argument on a negative or non-finite value.
  void set_elapsed_override(double seconds);
  void clear_elapsed_override() { elapsed_override_.reset(); }

  double elapsed_seconds(Clock::time_point now) const;

  // total_frames / elapsed. Throws std::domain_error("fps undefined before
  // time advances") when no time has elapsed; zero frames over positive time
  // is plain 0.0.
  double fps(Clock::time_point now = Clock::now()) const;

 private:
  std::size_t total_frames_ = 0;
  Clock::time_point start_;
  std::optional<double> elapsed_override_;
};

// live < medium_threshold -> Normal; up to and including high_threshold
// -> Medium; above -> High.
DensityLevel classify_density(std::size_t live_count,
                              const DensityConfig& config);

// Folds the tracker state and meter into one FrameStats record. The meter
// must already have been ticked for this frame. An fps request before any
// time has elapsed is reported as fps = 0.0 with fps_warming_up set instead
// of propagating the error.
FrameStats assemble_frame_stats(std::int64_t frame_index,
                                const CentroidTracker& tracker,
                                const FpsMeter& meter,
                                FpsMeter::Clock::time_point now,
                                const DensityConfig& density_config);

}  // namespace crowdflow
