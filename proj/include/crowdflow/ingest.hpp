#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crowdflow/types.hpp"

namespace crowdflow {

// Input-data error; the message carries the offending line or row.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One detection line as it appears on the wire, before any validation.
struct RawDetectionRecord {
  std::int64_t frame = 0;
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
  double confidence = 0.0;
  std::string label;
};

struct FrameGroup {
  std::int64_t frame_index = 0;
  std::vector<RawDetectionRecord> records;
};

// Incremental JSON Lines parser for detection streams. Feed one line at a
// time; a FrameGroup is handed back as soon as the frame index advances past
// it. The stream must be pre-sorted: a frame index lower than the current
// group's is a ParseError. Blank lines are skipped.
class DetectionStreamParser {
 public:
  std::optional<FrameGroup> push_line(std::string_view line);
  std::optional<FrameGroup> finish();
  std::size_t lines_consumed() const { return line_number_; }

 private:
  std::optional<FrameGroup> current_;
  std::size_t line_number_ = 0;  // 1-based, counts every fed line
};

// Batch conveniences over DetectionStreamParser.
std::vector<FrameGroup> parse_detection_stream(std::istream& input);
std::vector<FrameGroup> parse_detection_stream(
    std::span<const std::string> lines);

// One record back to its wire form (numbers in shortest round-trip form, so
// parse -> serialize -> parse is the identity).
std::string detection_record_to_jsonl(const RawDetectionRecord& record);

// Keeps exactly the records with confidence strictly greater than
// min_confidence and label equal to target_label, in input order, converted
// to validated Detections. A kept record that fails validation (bad box,
// confidence > 1, negative frame) raises ParseError naming its position.
std::vector<Detection> filter_persons(std::span<const RawDetectionRecord> records,
                                      double min_confidence = 0.5,
                                      std::string_view target_label = "person");

// Minimal CSV support: comma-separated, first line is the header, no quoting
// (fields must not contain commas). CR/LF line endings are accepted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(std::istream& input);

struct CountRecord {
  std::string image_id;
  std::int64_t count = 0;  // non-negative
};

// Ordered ground-truth people counts, typically loaded from a crowd-counting
// CSV export with at least the columns `id` and `count`.
struct CountDataset {
  std::vector<CountRecord> records;
  std::size_t n_rows = 0;  // data rows
  std::size_t n_cols = 0;  // columns observed in the source file
};

// Requires header columns `id` and `count`; extra columns are ignored but
// counted in n_cols. A missing column, or a count that is not a non-negative
// integer, raises ParseError (with the 1-based data row number).
CountDataset load_count_dataset(const CsvTable& table);
CountDataset load_count_dataset(std::istream& input);

// Numeric values of one named column, for regressions on arbitrary features.
// Raises ParseError on a missing column or a non-numeric cell.
std::vector<double> numeric_column(const CsvTable& table,
                                   std::string_view column_name);

}  // namespace crowdflow
