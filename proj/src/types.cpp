#include "crowdflow/types.hpp"

#include <cmath>

namespace crowdflow {

Point centroid(const BoundingBox& box) {
  return {(box.x1 + box.x2) / 2.0, (box.y1 + box.y2) / 2.0};
}

std::optional<std::string> validate_box(const BoundingBox& box) {
  if (!std::isfinite(box.x1) || !std::isfinite(box.y1) ||
      !std::isfinite(box.x2) || !std::isfinite(box.y2)) {
    return "non-finite coordinate";
  }
  if (box.x1 > box.x2) return "x1 > x2";
  if (box.y1 > box.y2) return "y1 > y2";
  return std::nullopt;
}

std::optional<std::string> validate_config(const TrackerConfig& config) {
  if (config.max_disappeared <= 0) return "max_disappeared must be positive";
  if (!(config.max_distance > 0.0) || !std::isfinite(config.max_distance)) {
    return "max_distance must be positive and finite";
  }
  return std::nullopt;
}

std::string_view density_label(DensityLevel level) {
  switch (level) {
    case DensityLevel::Normal:
      return "normal crowd";
    case DensityLevel::Medium:
      return "medium crowd";
    case DensityLevel::High:
      return "high crowd";
  }
  return "normal crowd";  // unreachable
}

std::optional<DensityLevel> density_from_label(std::string_view label) {
  if (label == "normal crowd") return DensityLevel::Normal;
  if (label == "medium crowd") return DensityLevel::Medium;
  if (label == "high crowd") return DensityLevel::High;
  return std::nullopt;
}

std::optional<std::string> validate_config(const DensityConfig& config) {
  if (config.medium_threshold <= 0) return "medium_threshold must be positive";
  if (config.high_threshold <= 0) return "high_threshold must be positive";
  if (config.medium_threshold > config.high_threshold) {
    return "medium_threshold must not exceed high_threshold";
  }
  return std::nullopt;
}

}  // namespace crowdflow
