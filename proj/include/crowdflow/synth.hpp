#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "crowdflow/tracker.hpp"
#include "crowdflow/types.hpp"

namespace crowdflow::synth {

struct Waypoint {
  std::int64_t frame = 0;
  double x = 0.0;
  double y = 0.0;
};

// Ground-truth trajectory of one synthetic actor. Position between waypoints
// is linear interpolation; before the first and after the last waypoint the
// position is clamped to them. Curved motion is approximated with dense
// waypoints.
struct ActorScript {
  std::int64_t actor_id = 0;
  std::int64_t enter_frame = 0;
  std::int64_t exit_frame = 0;  // inclusive
  std::vector<Waypoint> waypoints;
  double box_width = 20.0;
  double box_height = 40.0;
};

struct NoiseSpec {
  double position_jitter_std = 0.0;  // px, Gaussian
  double miss_probability = 0.0;     // in [0, 1)
  double confidence_lo = 0.9;        // must stay above the 0.5 filter cut
  double confidence_hi = 0.9;
  std::uint64_t seed = 0;
};

struct GroundTruthRow {
  std::int64_t frame = 0;
  std::int64_t actor_id = 0;
  double x = 0.0;  // true (un-jittered) centroid
  double y = 0.0;
  bool emitted = true;  // false when the detector "missed" this actor
};

struct GroundTruth {
  std::vector<GroundTruthRow> rows;       // frame-major, script order
  std::vector<std::size_t> true_counts;   // per frame, 0..n_frames-1
};

struct SceneOutput {
  std::vector<std::string> detection_lines;  // detection JSONL, one per line
  GroundTruth truth;
};

// Renders actor scripts into a detection stream plus ground truth. Pure
// function of (scripts, noise.seed, n_frames): reals are written with three
// decimals and all randomness comes from the pinned per-actor generator
// (stream id = actor id), so output is byte-identical across runs and
// platforms. Per active actor and frame the draw order is fixed: jitter dx,
// jitter dy, confidence, miss — positions and confidences therefore do not
// shift when only miss_probability changes.
//
// Throws std::invalid_argument when a script or the noise spec violates its
// invariants, or when n_frames does not cover every exit_frame.
SceneOutput generate_scene(std::span<const ActorScript> scripts,
                           const NoiseSpec& noise, std::int64_t n_frames);

struct Scorecard {
  std::size_t id_switches = 0;
  std::vector<std::size_t> count_errors;  // |live - true| per frame
  std::size_t total_count_error = 0;      // |final total - distinct actors|
};

// Scores a pipeline run against the ground truth of the scene that produced
// its input. The stats/updates streams must cover exactly the ground-truth
// frame range (one entry per frame, in order); otherwise
// std::invalid_argument. An id switch is a ground-truth actor whose
// associated track id differs between consecutive frames in which it had an
// associated track.
Scorecard score_tracking(const GroundTruth& truth,
                         std::span<const FrameStats> stats,
                         std::span<const FrameUpdateResult> updates);

// On-disk scene description: {"n_frames": N, "noise": {...}, "actors":
// [...]}. A missing noise block means a noise-free scene. See
// docs/FORMATS.md for the field-by-field layout.
struct SceneScript {
  std::vector<ActorScript> actors;
  NoiseSpec noise;
  std::int64_t n_frames = 0;
};
SceneScript parse_scene_script(std::istream& input);

std::string ground_truth_positions_csv(const GroundTruth& truth);
std::string ground_truth_counts_csv(const GroundTruth& truth);

}  // namespace crowdflow::synth
