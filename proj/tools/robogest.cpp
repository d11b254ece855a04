// Copyright 2026 The RoboGest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// robogest CLI: retarget generated pose sequences to robot joint
// trajectories, enforce feasibility, export playback timelines, and compute
// gesture metrics.
//
// Exit codes (stable):
//   0  success
//   1  internal error
//   2  parse/schema/io error (bad or missing input files)
//   3  degenerate bone under --on-degenerate fail
//   4  infeasible trajectory (pipeline refuses to write; validate found
//      violations)
//   5  too few samples/items for a metrics operation
//
// Metrics and report output on stdout is canonical JSON; diagnostics go to
// stderr. Results are byte-deterministic for identical inputs.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "robogest/robogest.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitSchema = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitInsufficient = 5;

struct CommonOptions {
  std::vector<std::string> inputs;
  std::string config_path;
  std::string output_path;
  std::string format = "json";
  std::string on_degenerate = "hold";
  std::optional<double> fps_override;
  std::optional<double> duration;
  bool lenient = false;
};

robogest::TrajectoryFormat parse_format(const std::string& s) {
  if (s == "json") return robogest::TrajectoryFormat::json;
  if (s == "csv") return robogest::TrajectoryFormat::csv;
  if (s == "timeline") return robogest::TrajectoryFormat::timeline;
  throw robogest::SchemaError("bad_enum", "unknown format '" + s + "'");
}

robogest::DegeneratePolicy parse_policy(const std::string& s) {
  if (s == "hold") return robogest::DegeneratePolicy::hold_previous;
  if (s == "zero") return robogest::DegeneratePolicy::zero;
  if (s == "fail") return robogest::DegeneratePolicy::fail;
  throw robogest::SchemaError("bad_enum", "unknown degenerate policy '" + s + "'");
}

std::string format_suffix(robogest::TrajectoryFormat format) {
  switch (format) {
    case robogest::TrajectoryFormat::json: return ".traj.json";
    case robogest::TrajectoryFormat::csv: return ".traj.csv";
    case robogest::TrajectoryFormat::timeline: return ".timeline.json";
  }
  return ".traj.json";
}

std::string input_stem(const fs::path& input) {
  std::string name = input.filename().string();
  const std::string pose_suffix = ".pose.json";
  if (name.size() > pose_suffix.size() &&
      name.ends_with(pose_suffix)) {
    return name.substr(0, name.size() - pose_suffix.size());
  }
  return input.stem().string();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const robogest::DegenerateBoneError*>(&e)) {
    return kExitDegenerate;
  }
  if (dynamic_cast<const robogest::InsufficientSamplesError*>(&e) ||
      dynamic_cast<const robogest::TooFewItemsError*>(&e)) {
    return kExitInsufficient;
  }
  if (dynamic_cast<const robogest::Error*>(&e)) {
    return kExitSchema;
  }
  return kExitInternal;
}

// Outcome of one processed input file; stdout/stderr text is buffered so
// batch workers can run concurrently and still print in input order.
struct FileResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

nlohmann::json feasibility_to_json(const robogest::FeasibilityReport& report) {
  nlohmann::json doc;
  doc["feasible"] = report.feasible;
  doc["per_joint_max_velocity"] = nlohmann::json::object();
  for (const auto& [name, v] : report.per_joint_max_velocity) {
    doc["per_joint_max_velocity"][name] = v;
  }
  doc["per_joint_limit_hits"] = nlohmann::json::object();
  for (const auto& [name, hits] : report.per_joint_limit_hits) {
    doc["per_joint_limit_hits"][name] = static_cast<std::int64_t>(hits);
  }
  return doc;
}

robogest::PoseSequence load_pose(const fs::path& path,
                                 const CommonOptions& options,
                                 std::string& err) {
  std::vector<std::string> warnings;
  robogest::ParseOptions parse_options{!options.lenient};
  robogest::PoseSequence seq =
      robogest::read_pose_file(path, parse_options, &warnings);
  for (const auto& w : warnings) err += "warning: " + w + "\n";
  if (options.fps_override) seq = seq.with_fps(*options.fps_override);
  return seq;
}

fs::path resolve_output(const CommonOptions& options, const fs::path& input,
                        robogest::TrajectoryFormat format, bool batch) {
  if (!batch) return options.output_path;
  fs::path dir(options.output_path);
  fs::create_directories(dir);
  return dir / (input_stem(input) + format_suffix(format));
}

// retarget: pose -> raw (un-limited) trajectory.
FileResult run_retarget(const fs::path& input, const CommonOptions& options,
                        const robogest::KinematicConfig& config, bool batch) {
  FileResult result;
  try {
    const auto format = parse_format(options.format);
    const auto policy = parse_policy(options.on_degenerate);
    robogest::PoseSequence seq = load_pose(input, options, result.err);
    robogest::JointTrajectory traj =
        robogest::retarget_sequence(seq, config, policy);
    traj.duration = options.duration;
    robogest::write_trajectory(traj, resolve_output(options, input, format, batch),
                               format);
  } catch (const std::exception& e) {
    result.exit_code = exit_code_for(e);
    result.err += std::string("error: ") + e.what() + "\n";
  }
  return result;
}

// pipeline: retarget -> limit_velocity -> clamp_limits -> validate -> write.
FileResult run_pipeline(const fs::path& input, const CommonOptions& options,
                        const robogest::KinematicConfig& config, bool batch) {
  FileResult result;
  try {
    const auto format = parse_format(options.format);
    const auto policy = parse_policy(options.on_degenerate);
    robogest::PoseSequence seq = load_pose(input, options, result.err);
    robogest::JointTrajectory traj =
        robogest::retarget_sequence(seq, config, policy);
    traj = robogest::limit_velocity(traj, config);
    traj = robogest::clamp_limits(traj, config);
    const robogest::FeasibilityReport report =
        robogest::validate_trajectory(traj, config);
    result.out = robogest::canonical_json(feasibility_to_json(report));
    if (!report.feasible) {
      result.exit_code = kExitInfeasible;
      result.err += "error: enforced trajectory still infeasible for '" +
                    input.string() + "', refusing to write\n";
      return result;
    }
    traj.duration = options.duration;
    robogest::write_trajectory(traj, resolve_output(options, input, format, batch),
                               format);
  } catch (const std::exception& e) {
    result.exit_code = exit_code_for(e);
    result.err += std::string("error: ") + e.what() + "\n";
  }
  return result;
}

// Runs one processor per input file on a small worker pool; output order and
// bytes are independent of scheduling.
template <typename Processor>
int run_batch(const std::vector<std::string>& inputs, Processor process) {
  std::vector<FileResult> results(inputs.size());
  std::atomic<std::size_t> next{0};
  const std::size_t worker_count = std::max<std::size_t>(
      1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                               inputs.size()));
  std::vector<std::thread> workers;
  workers.reserve(worker_count);
  for (std::size_t w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < inputs.size();) {
        results[i] = process(fs::path(inputs[i]));
      }
    });
  }
  for (auto& worker : workers) worker.join();

  int exit_code = kExitOk;
  for (const auto& result : results) {
    std::cerr << result.err;
    std::cout << result.out;
    exit_code = std::max(exit_code, result.exit_code);
  }
  return exit_code;
}

// Directory of pose files, sorted by filename; ids are filenames without the
// .pose.json / .json suffix.
std::vector<std::pair<std::string, fs::path>> list_pose_files(
    const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw robogest::IoError("not a directory: " + dir.string());
  }
  std::vector<std::pair<std::string, fs::path>> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() != ".json") continue;
    out.emplace_back(input_stem(entry.path()), entry.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) {
    throw robogest::IoError("no .json pose files in: " + dir.string());
  }
  return out;
}

std::vector<robogest::PoseSequence> load_pose_dir(const fs::path& dir,
                                                  bool lenient) {
  std::vector<robogest::PoseSequence> sequences;
  for (const auto& [id, path] : list_pose_files(dir)) {
    std::vector<std::string> warnings;
    sequences.push_back(
        robogest::read_pose_file(path, {!lenient}, &warnings));
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  }
  return sequences;
}

void print_json(const nlohmann::json& doc) {
  std::cout << robogest::canonical_json(doc);
}

int with_error_mapping(const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pose-to-robot gesture retargeting and evaluation toolkit"};
  app.require_subcommand(1);

  CommonOptions options;
  std::string dir_a, dir_b, dir_styles;
  std::string features = "positions";
  std::vector<double> percentiles = {10.0, 50.0, 90.0};

  auto add_common = [&options](CLI::App* cmd, bool pose_input) {
    cmd->add_option("-i,--input", options.inputs, "input file(s)")
        ->required()
        ->expected(-1);
    cmd->add_option("-c,--config", options.config_path,
                    "kinematic config JSON")
        ->required();
    cmd->add_option("-o,--output", options.output_path,
                    "output file (or directory with multiple inputs)")
        ->required();
    cmd->add_option("--format", options.format,
                    "output format: json|csv|timeline");
    cmd->add_flag("--lenient", options.lenient,
                  "warn about unknown keys instead of rejecting");
    if (pose_input) {
      cmd->add_option("--fps", options.fps_override,
                      "override the pose file frame rate");
      cmd->add_option("--on-degenerate", options.on_degenerate,
                      "degenerate-bone policy: hold|zero|fail");
      cmd->add_option("--duration", options.duration,
                      "intended clip length metadata, seconds");
    }
  };

  CLI::App* retarget = app.add_subcommand(
      "retarget", "compute raw joint angles (no limiting)");
  add_common(retarget, true);

  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "retarget, limit velocity, clamp limits, validate, write");
  add_common(pipeline, true);

  CLI::App* clamp =
      app.add_subcommand("clamp", "clamp a trajectory to joint angle limits");
  add_common(clamp, false);

  CLI::App* limit = app.add_subcommand(
      "limit", "apply the per-step maximum-velocity adjustment");
  add_common(limit, false);

  CLI::App* validate = app.add_subcommand(
      "validate", "dry-run feasibility report for a trajectory");
  validate->add_option("-i,--input", options.inputs, "trajectory JSON")
      ->required()
      ->expected(1);
  validate->add_option("-c,--config", options.config_path, "kinematic config")
      ->required();
  validate->add_flag("--lenient", options.lenient,
                     "warn about unknown keys instead of rejecting");

  CLI::App* metrics =
      app.add_subcommand("metrics", "gesture-set metrics (canonical JSON out)");
  metrics->require_subcommand(1);
  CLI::App* variance =
      metrics->add_subcommand("variance", "motion variance of one pose file");
  variance->add_option("-i,--input", options.inputs, "pose JSON")
      ->required()
      ->expected(1);
  CLI::App* fgd = metrics->add_subcommand(
      "fgd", "Fréchet gesture distance between two pose directories");
  fgd->add_option("-a,--set-a", dir_a, "first pose directory")->required();
  fgd->add_option("-b,--set-b", dir_b, "second pose directory")->required();
  fgd->add_option("--features", features, "feature space: positions|speeds");
  CLI::App* styles = metrics->add_subcommand(
      "styles", "select introvert/normal/extrovert representatives");
  styles->add_option("-d,--dir", dir_styles, "pose directory")->required();
  styles->add_option("--percentiles", percentiles,
                     "low,mid,high variance percentiles")
      ->delimiter(',')
      ->expected(3);

  CLI11_PARSE(app, argc, argv);

  const bool batch = options.inputs.size() > 1;

  if (retarget->parsed() || pipeline->parsed()) {
    return with_error_mapping([&] {
      const auto config = robogest::read_config(options.config_path,
                                                {!options.lenient});
      const bool is_pipeline = pipeline->parsed();
      return run_batch(options.inputs, [&](const fs::path& input) {
        return is_pipeline ? run_pipeline(input, options, config, batch)
                           : run_retarget(input, options, config, batch);
      });
    });
  }

  if (clamp->parsed() || limit->parsed()) {
    return with_error_mapping([&] {
      const auto config = robogest::read_config(options.config_path,
                                                {!options.lenient});
      const auto format = parse_format(options.format);
      const bool is_clamp = clamp->parsed();
      return run_batch(options.inputs, [&](const fs::path& input) {
        FileResult result;
        try {
          const auto traj =
              robogest::read_trajectory(input, {!options.lenient});
          const auto adjusted = is_clamp
                                    ? robogest::clamp_limits(traj, config)
                                    : robogest::limit_velocity(traj, config);
          robogest::write_trajectory(
              adjusted, resolve_output(options, input, format, batch), format);
        } catch (const std::exception& e) {
          result.exit_code = exit_code_for(e);
          result.err = std::string("error: ") + e.what() + "\n";
        }
        return result;
      });
    });
  }

  if (validate->parsed()) {
    return with_error_mapping([&] {
      const auto config = robogest::read_config(options.config_path,
                                                {!options.lenient});
      const auto traj = robogest::read_trajectory(fs::path(options.inputs[0]),
                                                  {!options.lenient});
      const auto report = robogest::validate_trajectory(traj, config);
      print_json(feasibility_to_json(report));
      return report.feasible ? kExitOk : kExitInfeasible;
    });
  }

  if (variance->parsed()) {
    return with_error_mapping([&] {
      std::string err;
      const auto seq = load_pose(fs::path(options.inputs[0]), options, err);
      std::cerr << err;
      print_json({{"variance", robogest::motion_variance(seq)}});
      return kExitOk;
    });
  }

  if (fgd->parsed()) {
    return with_error_mapping([&] {
      robogest::FeatureSpec spec;
      if (features == "positions") {
        spec.kind = robogest::FeatureKind::flat_positions;
      } else if (features == "speeds") {
        spec.kind = robogest::FeatureKind::per_frame_joint_speeds;
      } else {
        throw robogest::SchemaError("bad_enum",
                                    "unknown feature space '" + features + "'");
      }
      const auto set_a = load_pose_dir(dir_a, options.lenient);
      const auto set_b = load_pose_dir(dir_b, options.lenient);
      print_json({{"fgd", robogest::fgd_between_sets(set_a, set_b, spec)}});
      return kExitOk;
    });
  }

  if (styles->parsed()) {
    return with_error_mapping([&] {
      robogest::MetricsReport report;
      for (const auto& [id, path] : list_pose_files(dir_styles)) {
        std::vector<std::string> warnings;
        const auto seq =
            robogest::read_pose_file(path, {!options.lenient}, &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
        report.per_item_variance[id] = robogest::motion_variance(seq);
      }
      const auto selection = robogest::select_style_ids(
          report.per_item_variance,
          {percentiles[0], percentiles[1], percentiles[2]});
      report.style_ids = {selection.introvert, selection.normal,
                          selection.extrovert};
      print_json(robogest::metrics_report_to_json(report));
      return kExitOk;
    });
  }

  return kExitInternal;  // unreachable: a subcommand is required
}
