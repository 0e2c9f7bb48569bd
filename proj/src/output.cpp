#include "crowdflow/output.hpp"

#include <json.hpp>

namespace crowdflow {

using nlohmann::ordered_json;

std::string frame_stats_line(const FrameStats& stats, bool include_fps) {
  ordered_json obj;
  obj["frame"] = stats.frame_index;
  obj["live"] = stats.live_count;
  obj["total"] = stats.total_count;
  if (include_fps) obj["fps"] = stats.fps;
  obj["density"] = density_label(stats.density);
  obj["ids"] = stats.active_track_ids;
  return obj.dump();
}

std::vector<std::string> overlay_lines(
    const FrameStats& stats, const std::map<std::int64_t, Track>& tracks,
    OverlayAnchor anchor) {
  std::vector<std::string> lines;
  lines.reserve(stats.active_track_ids.size() + 1);
  for (const auto id : stats.active_track_ids) {
    const Track& track = tracks.at(id);
    ordered_json obj;
    obj["frame"] = stats.frame_index;
    obj["type"] = "track";
    obj["id"] = id;
    obj["x1"] = track.last_box.x1;
    obj["y1"] = track.last_box.y1;
    obj["x2"] = track.last_box.x2;
    obj["y2"] = track.last_box.y2;
    lines.push_back(obj.dump());
  }
  ordered_json label;
  label["frame"] = stats.frame_index;
  label["type"] = "label";
  label["text"] = density_label(stats.density);
  label["x"] = anchor.x;
  label["y"] = anchor.y;
  lines.push_back(label.dump());
  return lines;
}

std::string update_result_to_json(const FrameUpdateResult& update) {
  ordered_json obj;
  auto& matches = obj["matches"] = ordered_json::array();
  for (const auto& m : update.matches) {
    ordered_json entry;
    entry["track_id"] = m.track_id;
    entry["detection_index"] = m.detection_index;
    entry["distance"] = m.distance;
    matches.push_back(std::move(entry));
  }
  obj["new_ids"] = update.new_ids;
  obj["retired_ids"] = update.retired_ids;
  return obj.dump();
}

}  // namespace crowdflow
