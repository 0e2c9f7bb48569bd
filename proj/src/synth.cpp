#include "crowdflow/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "crowdflow/rng.hpp"

namespace crowdflow::synth {

namespace {

#if defined(__GNUC__)
__attribute__((format(printf, 1, 2)))
#endif
std::string
formatted(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  va_list measure;
  va_copy(measure, args);
  const int length = std::vsnprintf(nullptr, 0, fmt, measure);
  va_end(measure);
  std::string text(length > 0 ? static_cast<std::size_t>(length) : 0, '\0');
  std::vsnprintf(text.data(), text.size() + 1, fmt, args);
  va_end(args);
  return text;
}

void validate_script(const ActorScript& script) {
  const std::string who = "actor " + std::to_string(script.actor_id) + ": ";
  if (script.enter_frame < 0) {
    throw std::invalid_argument(who + "enter_frame must be non-negative");
  }
  if (script.enter_frame > script.exit_frame) {
    throw std::invalid_argument(who + "enter_frame exceeds exit_frame");
  }
  if (script.waypoints.empty()) {
    throw std::invalid_argument(who + "needs at least one waypoint");
  }
  if (!(script.box_width >= 0.0) || !(script.box_height >= 0.0) ||
      !std::isfinite(script.box_width) || !std::isfinite(script.box_height)) {
    throw std::invalid_argument(who + "box size must be non-negative");
  }
  for (std::size_t i = 0; i < script.waypoints.size(); ++i) {
    const auto& w = script.waypoints[i];
    if (w.frame < script.enter_frame || w.frame > script.exit_frame) {
      throw std::invalid_argument(who + "waypoint frame " +
                                  std::to_string(w.frame) +
                                  " outside [enter_frame, exit_frame]");
    }
    if (i > 0 && w.frame <= script.waypoints[i - 1].frame) {
      throw std::invalid_argument(who + "waypoint frames must be strictly increasing");
    }
    if (!std::isfinite(w.x) || !std::isfinite(w.y)) {
      throw std::invalid_argument(who + "waypoint position must be finite");
    }
  }
}

void validate_noise(const NoiseSpec& noise) {
  if (!(noise.position_jitter_std >= 0.0) ||
      !std::isfinite(noise.position_jitter_std)) {
    throw std::invalid_argument("position_jitter_std must be non-negative");
  }
  if (!(noise.miss_probability >= 0.0) || !(noise.miss_probability < 1.0)) {
    throw std::invalid_argument("miss_probability must be in [0, 1)");
  }
  if (!(noise.confidence_lo > 0.5)) {
    throw std::invalid_argument(
        "confidence_lo must exceed 0.5 so generated detections survive the person filter");
  }
  if (!(noise.confidence_lo <= noise.confidence_hi) ||
      !(noise.confidence_hi <= 1.0)) {
    throw std::invalid_argument("confidence range must satisfy lo <= hi <= 1");
  }
}

Point position_at(const ActorScript& script, std::int64_t frame) {
  const auto& wps = script.waypoints;
  if (frame <= wps.front().frame) return {wps.front().x, wps.front().y};
  if (frame >= wps.back().frame) return {wps.back().x, wps.back().y};
  std::size_t hi = 1;
  while (wps[hi].frame < frame) ++hi;
  const auto& a = wps[hi - 1];
  const auto& b = wps[hi];
  const double t = static_cast<double>(frame - a.frame) /
                   static_cast<double>(b.frame - a.frame);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

std::string detection_line(std::int64_t frame, double cx, double cy, double w,
                           double h, double confidence) {
  return formatted(
      "{\"frame\":%lld,\"x1\":%.3f,\"y1\":%.3f,\"x2\":%.3f,"
      "\"y2\":%.3f,\"confidence\":%.3f,\"label\":\"person\"}",
      static_cast<long long>(frame), cx - w / 2.0, cy - h / 2.0, cx + w / 2.0,
      cy + h / 2.0, confidence);
}

}  // namespace

SceneOutput generate_scene(std::span<const ActorScript> scripts,
                           const NoiseSpec& noise, std::int64_t n_frames) {
  if (n_frames < 0) throw std::invalid_argument("n_frames must be non-negative");
  validate_noise(noise);
  for (const auto& script : scripts) {
    validate_script(script);
    if (script.exit_frame >= n_frames) {
      throw std::invalid_argument(
          "actor " + std::to_string(script.actor_id) + ": exit_frame " +
          std::to_string(script.exit_frame) + " not covered by n_frames " +
          std::to_string(n_frames));
    }
  }
  std::set<std::int64_t> ids;
  for (const auto& script : scripts) {
    if (!ids.insert(script.actor_id).second) {
      throw std::invalid_argument("duplicate actor_id " +
                                  std::to_string(script.actor_id));
    }
  }

  std::vector<Xorshift64Star> streams;
  streams.reserve(scripts.size());
  for (const auto& script : scripts) {
    streams.emplace_back(noise.seed,
                         static_cast<std::uint64_t>(script.actor_id));
  }

  SceneOutput out;
  out.truth.true_counts.assign(static_cast<std::size_t>(n_frames), 0);
  for (std::int64_t frame = 0; frame < n_frames; ++frame) {
    for (std::size_t s = 0; s < scripts.size(); ++s) {
      const auto& script = scripts[s];
      if (frame < script.enter_frame || frame > script.exit_frame) continue;
      ++out.truth.true_counts[static_cast<std::size_t>(frame)];

      const Point true_pos = position_at(script, frame);
      const auto [jx, jy] = streams[s].normal_pair();
      const double confidence =
          streams[s].uniform(noise.confidence_lo, noise.confidence_hi);
      const bool missed = streams[s].uniform01() < noise.miss_probability;

      out.truth.rows.push_back(
          {frame, script.actor_id, true_pos.x, true_pos.y, !missed});
      if (!missed) {
        out.detection_lines.push_back(detection_line(
            frame, true_pos.x + jx * noise.position_jitter_std,
            true_pos.y + jy * noise.position_jitter_std, script.box_width,
            script.box_height, confidence));
      }
    }
  }
  return out;
}

Scorecard score_tracking(const GroundTruth& truth,
                         std::span<const FrameStats> stats,
                         std::span<const FrameUpdateResult> updates) {
  const std::size_t n_frames = truth.true_counts.size();
  if (stats.size() != n_frames || updates.size() != n_frames) {
    throw std::invalid_argument(
        "frame-range mismatch: ground truth covers " +
        std::to_string(n_frames) + " frames, got " +
        std::to_string(stats.size()) + " stats / " +
        std::to_string(updates.size()) + " updates");
  }
  for (std::size_t f = 0; f < n_frames; ++f) {
    if (stats[f].frame_index != static_cast<std::int64_t>(f)) {
      throw std::invalid_argument("frame-range mismatch at position " +
                                  std::to_string(f));
    }
  }

  Scorecard card;
  card.count_errors.reserve(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const auto live = static_cast<std::int64_t>(stats[f].live_count);
    const auto truth_count = static_cast<std::int64_t>(truth.true_counts[f]);
    card.count_errors.push_back(
        static_cast<std::size_t>(std::abs(live - truth_count)));
  }

  // Emitted ground-truth rows of a frame are, in order, detection indices
  // 0, 1, ... of that frame's input.
  std::vector<std::vector<std::int64_t>> emitted_actor(n_frames);
  std::set<std::int64_t> actor_ids;
  for (const auto& row : truth.rows) {
    actor_ids.insert(row.actor_id);
    if (row.emitted) {
      emitted_actor[static_cast<std::size_t>(row.frame)].push_back(row.actor_id);
    }
  }

  const std::size_t final_total = stats.empty() ? 0 : stats.back().total_count;
  const auto diff = static_cast<std::int64_t>(final_total) -
                    static_cast<std::int64_t>(actor_ids.size());
  card.total_count_error = static_cast<std::size_t>(std::abs(diff));

  // Per frame, recover detection_index -> track id: matches carry it
  // directly; new registrations consume the unmatched detection indices in
  // ascending order.
  std::map<std::int64_t, std::int64_t> last_track;  // actor -> last track id
  for (std::size_t f = 0; f < n_frames; ++f) {
    const auto& upd = updates[f];
    const std::size_t n_dets = emitted_actor[f].size();
    std::vector<std::int64_t> det_track(n_dets, -1);
    for (const auto& match : upd.matches) {
      det_track.at(match.detection_index) = match.track_id;
    }
    std::size_t next_new = 0;
    for (std::size_t d = 0; d < n_dets && next_new < upd.new_ids.size(); ++d) {
      if (det_track[d] == -1) det_track[d] = upd.new_ids[next_new++];
    }
    for (std::size_t d = 0; d < n_dets; ++d) {
      const std::int64_t actor = emitted_actor[f][d];
      const std::int64_t track = det_track[d];
      const auto it = last_track.find(actor);
      if (it != last_track.end() && it->second != track) ++card.id_switches;
      last_track[actor] = track;
    }
  }
  return card;
}

SceneScript parse_scene_script(std::istream& input) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scene script: malformed JSON: ") +
                                e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("scene script: expected a JSON object");
  }

  SceneScript scene;
  try {
    scene.n_frames = doc.at("n_frames").get<std::int64_t>();
    if (doc.contains("noise")) {
      const auto& n = doc["noise"];
      scene.noise.position_jitter_std =
          n.value("position_jitter_std", scene.noise.position_jitter_std);
      scene.noise.miss_probability =
          n.value("miss_probability", scene.noise.miss_probability);
      if (n.contains("confidence")) {
        const auto& range = n.at("confidence");
        scene.noise.confidence_lo = range.at(0).get<double>();
        scene.noise.confidence_hi = range.at(1).get<double>();
      }
      scene.noise.seed = n.value("seed", scene.noise.seed);
    }
    for (const auto& a : doc.value("actors", nlohmann::json::array())) {
      ActorScript script;
      script.actor_id = a.at("id").get<std::int64_t>();
      script.enter_frame = a.at("enter").get<std::int64_t>();
      script.exit_frame = a.at("exit").get<std::int64_t>();
      const auto& box = a.at("box");
      script.box_width = box.at(0).get<double>();
      script.box_height = box.at(1).get<double>();
      for (const auto& w : a.at("waypoints")) {
        script.waypoints.push_back({w.at(0).get<std::int64_t>(),
                                    w.at(1).get<double>(),
                                    w.at(2).get<double>()});
      }
      scene.actors.push_back(std::move(script));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scene script: ") + e.what());
  }
  return scene;
}

std::string ground_truth_positions_csv(const GroundTruth& truth) {
  std::string csv = "frame,actor_id,x,y\n";
  for (const auto& row : truth.rows) {
    csv += formatted("%lld,%lld,%.3f,%.3f\n", static_cast<long long>(row.frame),
                     static_cast<long long>(row.actor_id), row.x, row.y);
  }
  return csv;
}

std::string ground_truth_counts_csv(const GroundTruth& truth) {
  std::string csv = "frame,true_count\n";
  for (std::size_t f = 0; f < truth.true_counts.size(); ++f) {
    csv += formatted("%zu,%zu\n", f, truth.true_counts[f]);
  }
  return csv;
}

}  // namespace crowdflow::synth
