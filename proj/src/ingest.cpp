#include "crowdflow/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace crowdflow {

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* field,
                      std::size_t line_number) {
  const auto it = obj.find(field);
  if (it == obj.end()) {
    throw ParseError("line " + std::to_string(line_number) +
                     ": missing field \"" + field + "\"");
  }
  if (!it->is_number()) {
    throw ParseError("line " + std::to_string(line_number) + ": field \"" +
                     field + "\" must be a number");
  }
  return it->get<double>();
}

RawDetectionRecord parse_record(std::string_view line,
                                std::size_t line_number) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_number) +
                     ": malformed JSON: " + e.what());
  }
  if (!obj.is_object()) {
    throw ParseError("line " + std::to_string(line_number) +
                     ": expected a JSON object");
  }

  RawDetectionRecord record;
  const auto frame_it = obj.find("frame");
  if (frame_it == obj.end()) {
    throw ParseError("line " + std::to_string(line_number) +
                     ": missing field \"frame\"");
  }
  if (!frame_it->is_number_integer()) {
    throw ParseError("line " + std::to_string(line_number) +
                     ": field \"frame\" must be an integer");
  }
  record.frame = frame_it->get<std::int64_t>();
  record.x1 = require_number(obj, "x1", line_number);
  record.y1 = require_number(obj, "y1", line_number);
  record.x2 = require_number(obj, "x2", line_number);
  record.y2 = require_number(obj, "y2", line_number);
  record.confidence = require_number(obj, "confidence", line_number);
  const auto label_it = obj.find("label");
  if (label_it == obj.end()) {
    throw ParseError("line " + std::to_string(line_number) +
                     ": missing field \"label\"");
  }
  if (!label_it->is_string()) {
    throw ParseError("line " + std::to_string(line_number) +
                     ": field \"label\" must be a string");
  }
  record.label = label_it->get<std::string>();
  return record;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::string trim_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::optional<FrameGroup> DetectionStreamParser::push_line(
    std::string_view line) {
  ++line_number_;
  if (is_blank(line)) return std::nullopt;

  RawDetectionRecord record = parse_record(line, line_number_);

  if (!current_.has_value()) {
    current_ = FrameGroup{record.frame, {std::move(record)}};
    return std::nullopt;
  }
  if (record.frame == current_->frame_index) {
    current_->records.push_back(std::move(record));
    return std::nullopt;
  }
  if (record.frame < current_->frame_index) {
    throw ParseError("line " + std::to_string(line_number_) + ": frame index " +
                     std::to_string(record.frame) +
                     " not ascending (current frame is " +
                     std::to_string(current_->frame_index) + ")");
  }
  FrameGroup done = std::move(*current_);
  current_ = FrameGroup{record.frame, {std::move(record)}};
  return done;
}

std::optional<FrameGroup> DetectionStreamParser::finish() {
  std::optional<FrameGroup> done = std::move(current_);
  current_.reset();
  return done;
}

std::vector<FrameGroup> parse_detection_stream(std::istream& input) {
  DetectionStreamParser parser;
  std::vector<FrameGroup> groups;
  std::string line;
  while (std::getline(input, line)) {
    if (auto group = parser.push_line(trim_cr(line))) {
      groups.push_back(std::move(*group));
    }
  }
  if (auto group = parser.finish()) groups.push_back(std::move(*group));
  return groups;
}

std::vector<FrameGroup> parse_detection_stream(
    std::span<const std::string> lines) {
  DetectionStreamParser parser;
  std::vector<FrameGroup> groups;
  for (const auto& line : lines) {
    if (auto group = parser.push_line(line)) groups.push_back(std::move(*group));
  }
  if (auto group = parser.finish()) groups.push_back(std::move(*group));
  return groups;
}

std::string detection_record_to_jsonl(const RawDetectionRecord& record) {
  nlohmann::ordered_json obj;
  obj["frame"] = record.frame;
  obj["x1"] = record.x1;
  obj["y1"] = record.y1;
  obj["x2"] = record.x2;
  obj["y2"] = record.y2;
  obj["confidence"] = record.confidence;
  obj["label"] = record.label;
  return obj.dump();
}

std::vector<Detection> filter_persons(
    std::span<const RawDetectionRecord> records, double min_confidence,
    std::string_view target_label) {
  std::vector<Detection> kept;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    // Strict inequality at the threshold: a record exactly at
    // min_confidence is dropped.
    if (!(r.confidence > min_confidence) || r.label != target_label) continue;

    const BoundingBox box{r.x1, r.y1, r.x2, r.y2};
    if (auto violation = validate_box(box)) {
      throw ParseError("record " + std::to_string(i) +
                       ": invalid box: " + *violation);
    }
    if (!(r.confidence <= 1.0)) {
      throw ParseError("record " + std::to_string(i) +
                       ": confidence above 1");
    }
    if (r.frame < 0) {
      throw ParseError("record " + std::to_string(i) +
                       ": negative frame index");
    }
    kept.push_back(Detection{r.frame, box, r.confidence, r.label});
  }
  return kept;
}

CsvTable parse_csv(std::istream& input) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  std::size_t line_number = 0;
  auto split = [](const std::string& text) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(text);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!text.empty() && text.back() == ',') fields.emplace_back();
    return fields;
  };
  while (std::getline(input, line)) {
    ++line_number;
    line = trim_cr(line);
    if (line.empty()) continue;
    auto fields = split(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError("row " + std::to_string(table.rows.size() + 1) + ": " +
                       std::to_string(fields.size()) + " fields, header has " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw ParseError("empty CSV: missing header row");
  return table;
}

namespace {

std::size_t require_column(const CsvTable& table, std::string_view name) {
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) {
    throw ParseError("missing required column \"" + std::string(name) + "\"");
  }
  return static_cast<std::size_t>(it - table.header.begin());
}

}  // namespace

CountDataset load_count_dataset(const CsvTable& table) {
  const std::size_t id_col = require_column(table, "id");
  const std::size_t count_col = require_column(table, "count");

  CountDataset dataset;
  dataset.n_cols = table.header.size();
  dataset.records.reserve(table.rows.size());
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    const std::string& cell = table.rows[row][count_col];
    std::int64_t count = 0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc{} || ptr != last) {
      throw ParseError("row " + std::to_string(row + 1) +
                       ": count \"" + cell + "\" is not an integer");
    }
    if (count < 0) {
      throw ParseError("row " + std::to_string(row + 1) +
                       ": count is negative");
    }
    dataset.records.push_back({table.rows[row][id_col], count});
  }
  dataset.n_rows = dataset.records.size();
  return dataset;
}

CountDataset load_count_dataset(std::istream& input) {
  return load_count_dataset(parse_csv(input));
}

std::vector<double> numeric_column(const CsvTable& table,
                                   std::string_view column_name) {
  const std::size_t col = require_column(table, column_name);
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    const std::string& cell = table.rows[row][col];
    try {
      std::size_t consumed = 0;
      const double v = std::stod(cell, &consumed);
      if (consumed != cell.size() || !std::isfinite(v)) throw std::invalid_argument(cell);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("row " + std::to_string(row + 1) + ": column \"" +
                       std::string(column_name) + "\" value \"" + cell +
                       "\" is not numeric");
    }
  }
  return values;
}

}  // namespace crowdflow
