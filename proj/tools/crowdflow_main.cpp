// crowdflow: streaming crowd analytics over detection-record streams.
//
// Subcommands:
//   track  detection JSONL in, per-frame stats JSONL out
//   eval   count-dataset CSV in, regression metrics JSON out
//   synth  scene script in, synthetic detection stream + ground truth out

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "crowdflow/ingest.hpp"
#include "crowdflow/output.hpp"
#include "crowdflow/pipeline.hpp"
#include "crowdflow/regression.hpp"
#include "crowdflow/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUsageError = 2;

// '-' selects the standard stream.
std::istream& open_input(const std::string& path, std::ifstream& file) {
  if (path == "-") return std::cin;
  file.open(path);
  if (!file) throw crowdflow::ParseError("cannot open input file: " + path);
  return file;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  return file;
}

struct TrackOptions {
  std::string input = "-";
  std::string output = "-";
  std::string overlay;
  int max_disappeared = 40;
  double max_distance = 50.0;
  int medium_threshold = 15;
  int high_threshold = 25;
  std::optional<double> replay_fps;
  bool no_fps_field = false;
};

int run_track(const TrackOptions& options) {
  crowdflow::PipelineConfig config;
  config.tracker.max_disappeared = options.max_disappeared;
  config.tracker.max_distance = options.max_distance;
  config.density.medium_threshold = options.medium_threshold;
  config.density.high_threshold = options.high_threshold;
  config.replay_fps = options.replay_fps;

  std::unique_ptr<crowdflow::StreamProcessor> processor;
  std::ifstream input_file;
  std::ofstream output_file;
  std::ofstream overlay_file;
  std::ostream* output_stream = nullptr;
  std::ostream* overlay_stream = nullptr;
  try {
    processor = std::make_unique<crowdflow::StreamProcessor>(config);
    output_stream = &open_output(options.output, output_file);
    if (!options.overlay.empty()) {
      overlay_stream = &open_output(options.overlay, overlay_file);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    std::istream& input = open_input(options.input, input_file);
    std::ostream& output = *output_stream;

    const auto sink = [&](const crowdflow::FrameOutput& out) {
      output << crowdflow::frame_stats_line(out.stats, !options.no_fps_field)
             << '\n';
      output.flush();
      if (overlay_stream != nullptr) {
        for (const auto& line : crowdflow::overlay_lines(
                 out.stats, processor->tracker().tracks())) {
          *overlay_stream << line << '\n';
        }
        overlay_stream->flush();
      }
    };

    crowdflow::DetectionStreamParser parser;
    std::string line;
    while (std::getline(input, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (auto group = parser.push_line(line)) {
        processor->process_group(*group, sink);
      }
    }
    if (auto group = parser.finish()) processor->process_group(*group, sink);

    std::cerr << processor->frames_processed() << " frames, total people "
              << processor->tracker().total_count() << ", mean fps "
              << processor->final_fps() << "\n";
    return kExitOk;
  } catch (const crowdflow::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

struct EvalOptions {
  std::string dataset;
  std::string feature = "index";
  std::optional<double> split;
  std::uint64_t seed = 0;
  std::size_t bins = 10;
  std::optional<std::size_t> predict_index;
  std::string histogram_csv;
};

int run_eval(const EvalOptions& options) {
  crowdflow::CsvTable table;
  crowdflow::CountDataset dataset;
  std::vector<double> features;
  try {
    std::ifstream input_file;
    std::istream& input = open_input(options.dataset, input_file);
    table = crowdflow::parse_csv(input);
    dataset = crowdflow::load_count_dataset(table);
    if (options.feature == "index") {
      features.resize(dataset.records.size());
      for (std::size_t i = 0; i < features.size(); ++i) {
        features[i] = static_cast<double>(i);
      }
    } else {
      features = crowdflow::numeric_column(table, options.feature);
    }
  } catch (const crowdflow::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    std::vector<double> targets;
    targets.reserve(dataset.records.size());
    for (const auto& r : dataset.records) {
      targets.push_back(static_cast<double>(r.count));
    }

    crowdflow::EvaluationReport report =
        crowdflow::summarize(dataset, options.bins);

    crowdflow::RegressionModel model;
    if (options.split.has_value()) {
      const auto split = crowdflow::train_test_split(
          targets.size(), *options.split, options.seed);
      std::vector<double> train_x, train_y, test_pred, test_actual;
      for (const auto i : split.train) {
        train_x.push_back(features[i]);
        train_y.push_back(targets[i]);
      }
      model = crowdflow::fit(train_x, train_y);
      for (const auto i : split.test) {
        test_pred.push_back(crowdflow::predict(model, features[i]));
        test_actual.push_back(targets[i]);
      }
      report.mae = crowdflow::mae(test_pred, test_actual);
      report.r2 = crowdflow::r2_score(test_pred, test_actual);
    } else {
      model = crowdflow::fit(features, targets);
      std::vector<double> predictions;
      predictions.reserve(features.size());
      for (const auto x : features) {
        predictions.push_back(crowdflow::predict(model, x));
      }
      report.mae = crowdflow::mae(predictions, targets);
      report.r2 = crowdflow::r2_score(predictions, targets);
    }

    nlohmann::ordered_json out;
    out["mae"] = report.mae;
    out["r2"] = report.r2;
    out["mean_count"] = report.mean_count;
    out["n_rows"] = report.n_rows;
    out["n_cols"] = report.n_cols;
    auto& hist = out["histogram"] = nlohmann::ordered_json::array();
    for (const auto& bin : report.count_histogram) {
      nlohmann::ordered_json entry;
      entry["lower"] = bin.lower;
      entry["upper"] = bin.upper;
      entry["frequency"] = bin.frequency;
      hist.push_back(std::move(entry));
    }
    out["slope"] = model.slope;
    out["intercept"] = model.intercept;
    if (options.predict_index.has_value()) {
      const auto prediction = crowdflow::predict_count_for_record(
          dataset, model, *options.predict_index, features);
      nlohmann::ordered_json p;
      p["index"] = *options.predict_index;
      p["id"] = prediction.image_id;
      p["predicted"] = prediction.predicted;
      p["actual"] = prediction.actual;
      out["prediction"] = std::move(p);
    }

    if (!options.histogram_csv.empty()) {
      std::ofstream csv_file;
      std::ostream& csv = open_output(options.histogram_csv, csv_file);
      csv << "bin_lower,bin_upper,frequency\n";
      for (const auto& bin : report.count_histogram) {
        csv << bin.lower << ',' << bin.upper << ',' << bin.frequency << '\n';
      }
    }

    std::cout << out.dump() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsageError;
  }
}

struct SynthOptions {
  std::string scene;
  std::string out_prefix;
};

int run_synth(const SynthOptions& options) {
  try {
    std::ifstream input_file;
    std::istream& input = open_input(options.scene, input_file);
    const auto scene = crowdflow::synth::parse_scene_script(input);
    const auto output = crowdflow::synth::generate_scene(
        scene.actors, scene.noise, scene.n_frames);

    {
      std::ofstream detections(options.out_prefix + ".detections.jsonl");
      if (!detections) {
        throw std::invalid_argument("cannot write detections file");
      }
      for (const auto& line : output.detection_lines) detections << line << '\n';
    }
    {
      std::ofstream positions(options.out_prefix + ".positions.csv");
      if (!positions) throw std::invalid_argument("cannot write positions file");
      positions << crowdflow::synth::ground_truth_positions_csv(output.truth);
    }
    {
      std::ofstream counts(options.out_prefix + ".counts.csv");
      if (!counts) throw std::invalid_argument("cannot write counts file");
      counts << crowdflow::synth::ground_truth_counts_csv(output.truth);
    }
    std::cerr << output.detection_lines.size() << " detections over "
              << scene.n_frames << " frames, " << scene.actors.size()
              << " actors\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming crowd analytics: tracking, counting, density levels"};
  app.require_subcommand(1);

  TrackOptions track_options;
  auto* track = app.add_subcommand(
      "track", "turn a detection JSONL stream into per-frame crowd stats");
  track->add_option("--input", track_options.input,
                    "detection JSONL path, or - for stdin");
  track->add_option("--output", track_options.output,
                    "stats JSONL path, or - for stdout");
  track->add_option("--overlay", track_options.overlay,
                    "also write per-frame overlay records to this path");
  track->add_option("--max-disappeared", track_options.max_disappeared,
                    "frames a track survives without a match");
  track->add_option("--max-distance", track_options.max_distance,
                    "largest matchable centroid distance, px");
  track->add_option("--medium-threshold", track_options.medium_threshold,
                    "live count where density becomes medium");
  track->add_option("--high-threshold", track_options.high_threshold,
                    "live count above which density is high");
  track->add_option("--replay-fps", track_options.replay_fps,
                    "report this fps instead of wall-clock throughput");
  track->add_flag("--no-fps-field", track_options.no_fps_field,
                  "omit the fps field from stats records");

  EvalOptions eval_options;
  auto* eval = app.add_subcommand(
      "eval", "fit and score a linear count model over a dataset CSV");
  eval->add_option("--dataset", eval_options.dataset,
                   "CSV with id and count columns, or - for stdin")
      ->required();
  eval->add_option("--feature", eval_options.feature,
                   "feature column name, or 'index' for the record index");
  eval->add_option("--split", eval_options.split,
                   "held-out fraction; metrics are reported on it");
  eval->add_option("--seed", eval_options.seed, "split shuffle seed");
  eval->add_option("--bins", eval_options.bins, "histogram bin count")
      ->check(CLI::PositiveNumber);
  eval->add_option("--predict-index", eval_options.predict_index,
                   "also predict the count of this record index");
  eval->add_option("--histogram-csv", eval_options.histogram_csv,
                   "write the count histogram as CSV to this path");

  SynthOptions synth_options;
  auto* synth = app.add_subcommand(
      "synth", "render a scene script into detections plus ground truth");
  synth->add_option("--scene", synth_options.scene, "scene script JSON path")
      ->required();
  synth->add_option("--out-prefix", synth_options.out_prefix,
                    "output path prefix")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  if (track->parsed()) return run_track(track_options);
  if (eval->parsed()) return run_eval(eval_options);
  return run_synth(synth_options);
}
