#include "crowdflow/tracker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

#include "crowdflow/kernels.hpp"

namespace crowdflow {

namespace {

struct CandidatePair {
  double distance;
  std::int64_t track_id;
  std::size_t detection_index;
  std::size_t track_slot;  // position in the per-update track arrays
};

}  // namespace

CentroidTracker::CentroidTracker(const TrackerConfig& config)
    : config_(config) {
  if (auto violation = validate_config(config)) {
    throw std::invalid_argument("tracker config: " + *violation);
  }
}

std::int64_t CentroidTracker::register_track(const Detection& detection,
                                             std::int64_t frame_index) {
  const std::int64_t id = next_id_++;
  tracks_.emplace(id, Track{.id = id,
                            .centroid = centroid(detection.box),
                            .last_box = detection.box,
                            .disappeared = 0,
                            .last_seen_frame = frame_index});
  ++total_registered_;
  return id;
}

FrameUpdateResult CentroidTracker::update(
    std::int64_t frame_index, std::span<const Detection> detections) {
  if (last_frame_.has_value() && frame_index <= *last_frame_) {
    throw std::invalid_argument(
        "frame index " + std::to_string(frame_index) +
        " not increasing (last was " + std::to_string(*last_frame_) + ")");
  }
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (auto violation = validate_box(detections[i].box)) {
      throw std::invalid_argument("detection " + std::to_string(i) +
                                  ": invalid box: " + *violation);
    }
  }
  last_frame_ = frame_index;

  FrameUpdateResult result;

  std::vector<Point> detection_centroids;
  detection_centroids.reserve(detections.size());
  for (const auto& d : detections) {
    detection_centroids.push_back(centroid(d.box));
  }

  std::vector<std::int64_t> track_ids;
  std::vector<Point> track_centroids;
  track_ids.reserve(tracks_.size());
  track_centroids.reserve(tracks_.size());
  for (const auto& [id, track] : tracks_) {
    track_ids.push_back(id);
    track_centroids.push_back(track.centroid);
  }

  std::vector<bool> track_matched(track_ids.size(), false);
  std::vector<bool> detection_matched(detections.size(), false);

  if (!track_ids.empty() && !detections.empty()) {
    std::vector<double> distances(track_ids.size() * detections.size());
    kernels::pairwise_distances(track_centroids, detection_centroids,
                                distances);

    // Pairs beyond max_distance can never be accepted; drop them before the
    // sort.
    std::vector<CandidatePair> candidates;
    candidates.reserve(distances.size());
    for (std::size_t t = 0; t < track_ids.size(); ++t) {
      for (std::size_t d = 0; d < detections.size(); ++d) {
        const double dist = distances[t * detections.size() + d];
        if (dist <= config_.max_distance) {
          candidates.push_back({dist, track_ids[t], d, t});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const CandidatePair& a, const CandidatePair& b) {
                return std::tie(a.distance, a.track_id, a.detection_index) <
                       std::tie(b.distance, b.track_id, b.detection_index);
              });

    for (const auto& c : candidates) {
      if (track_matched[c.track_slot] || detection_matched[c.detection_index]) {
        continue;
      }
      track_matched[c.track_slot] = true;
      detection_matched[c.detection_index] = true;
      Track& track = tracks_.at(c.track_id);
      const Detection& det = detections[c.detection_index];
      track.centroid = detection_centroids[c.detection_index];
      track.last_box = det.box;
      track.last_seen_frame = frame_index;
      track.disappeared = 0;
      result.matches.push_back({c.track_id, c.detection_index, c.distance});
    }
  }

  for (std::size_t d = 0; d < detections.size(); ++d) {
    if (!detection_matched[d]) {
      result.new_ids.push_back(register_track(detections[d], frame_index));
    }
  }

  for (std::size_t t = 0; t < track_ids.size(); ++t) {
    if (track_matched[t]) continue;
    Track& track = tracks_.at(track_ids[t]);
    if (++track.disappeared > config_.max_disappeared) {
      result.retired_ids.push_back(track_ids[t]);
      tracks_.erase(track_ids[t]);
    }
  }

  return result;
}

}  // namespace crowdflow
