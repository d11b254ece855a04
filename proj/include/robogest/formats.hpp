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

#ifndef ROBOGEST_FORMATS_HPP_
#define ROBOGEST_FORMATS_HPP_

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "robogest/canonical_json.hpp"
#include "robogest/core.hpp"
#include "robogest/errors.hpp"

// On-disk formats: pose input, kinematic config, trajectory output (JSON,
// CSV, timeline), metrics report. All JSON documents are written in the
// canonical form of canonical_json.hpp; readers accept full double precision
// and are reentrant.
//
// Pose schema:      { "fps": number?, "skeleton": [10 names],
//                     "frames": [[[x, y, z] x10], ...] }
// Config schema:    { "skeleton": [10 names], "joints": [{ "name", "rule",
//                     "angle_min", "angle_max", "vel_max" }, ...] }
// Trajectory schema:{ "fps": number, "joints": [names], "frames": [[...]],
//                     "duration": number? }
// Timeline schema:  { "names": [...], "angleLists": [[...]],
//                     "timeLists": [[...]] } with timeLists[j][k] = (k+1)/fps.
//
// Unknown object keys are rejected in strict mode (the default) and warned
// about in lenient mode. Every schema failure carries one of the stable
// codes: parse_error, missing_key, bad_type, unknown_key, bad_enum,
// skeleton_size, duplicate_joint, joint_arity, coord_arity, ragged_frames,
// fps_nonpositive, no_frames, nonfinite_value, plus the validate_config
// codes (limits_degenerate, vel_max_nonpositive, unknown_joint,
// axis_conflict, third_joint_missing, third_joint_unexpected,
// scale_nonpositive, sign_invalid).

namespace robogest {

struct ParseOptions {
  bool strict = true;  // reject unknown keys instead of warning
};

// Default frame rate assumed when a pose file omits fps.
inline constexpr double kDefaultFps = 15.0;

namespace detail {

inline nlohmann::json parse_document(const std::string& text,
                                     const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries the byte offset of the failure.
    throw ParseError("parse_error", origin + ": " + e.what());
  }
}

// Tracks which keys of one JSON object were consumed so unknown keys can be
// rejected or warned about afterwards.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& obj, std::string context)
      : obj_(obj), context_(std::move(context)) {
    if (!obj_.is_object()) {
      throw SchemaError("bad_type", context_ + ": expected an object");
    }
  }

  const nlohmann::json* find(const std::string& key) {
    consumed_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const nlohmann::json& require(const std::string& key) {
    const nlohmann::json* v = find(key);
    if (v == nullptr) {
      throw SchemaError("missing_key",
                        context_ + ": missing required key '" + key + "'");
    }
    return *v;
  }

  double number(const std::string& key) { return as_number(require(key), key); }

  std::optional<double> optional_number(const std::string& key) {
    const nlohmann::json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return as_number(*v, key);
  }

  std::string string(const std::string& key) {
    return as_string(require(key), key);
  }

  std::optional<std::string> optional_string(const std::string& key) {
    const nlohmann::json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return as_string(*v, key);
  }

  const nlohmann::json& array(const std::string& key) {
    const nlohmann::json& v = require(key);
    if (!v.is_array()) {
      throw SchemaError("bad_type",
                        context_ + ": key '" + key + "' must be an array");
    }
    return v;
  }

  // Unknown-key sweep; call after all expected keys were consumed.
  void finish(const ParseOptions& options, std::vector<std::string>* warnings) {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (consumed_.count(it.key())) continue;
      if (options.strict) {
        throw SchemaError("unknown_key",
                          context_ + ": unknown key '" + it.key() + "'");
      }
      if (warnings != nullptr) {
        warnings->push_back(context_ + ": ignoring unknown key '" + it.key() +
                            "'");
      }
    }
  }

 private:
  double as_number(const nlohmann::json& v, const std::string& key) const {
    if (!v.is_number()) {
      throw SchemaError("bad_type",
                        context_ + ": key '" + key + "' must be a number");
    }
    return v.get<double>();
  }

  std::string as_string(const nlohmann::json& v, const std::string& key) const {
    if (!v.is_string()) {
      throw SchemaError("bad_type",
                        context_ + ": key '" + key + "' must be a string");
    }
    return v.get<std::string>();
  }

  const nlohmann::json& obj_;
  std::string context_;
  std::set<std::string> consumed_;
};

inline std::vector<std::string> string_array(const nlohmann::json& arr,
                                             const std::string& context) {
  std::vector<std::string> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_string()) {
      throw SchemaError("bad_type", context + ": expected strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline Axis axis_from_string(const std::string& s, const std::string& context) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "z") return Axis::z;
  throw SchemaError("bad_enum", context + ": axis must be x, y, or z, got '" +
                                    s + "'");
}

inline std::string axis_to_string(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "x";  // unreachable
}

inline RuleKind rule_kind_from_string(const std::string& s,
                                      const std::string& context) {
  if (s == "direction_pair") return RuleKind::direction_pair;
  if (s == "interior_angle") return RuleKind::interior_angle;
  if (s == "constant") return RuleKind::constant;
  throw SchemaError("bad_enum",
                    context + ": unknown rule kind '" + s + "'");
}

inline std::string rule_kind_to_string(RuleKind k) {
  switch (k) {
    case RuleKind::direction_pair: return "direction_pair";
    case RuleKind::interior_angle: return "interior_angle";
    case RuleKind::constant: return "constant";
  }
  return "constant";  // unreachable
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pose sequences

inline PoseSequence parse_pose_json(const std::string& text,
                                    ParseOptions options = {},
                                    std::vector<std::string>* warnings = nullptr,
                                    const std::string& origin = "<pose>") {
  const nlohmann::json doc = detail::parse_document(text, origin);
  detail::ObjectReader root(doc, origin);

  Skeleton skeleton(detail::string_array(root.array("skeleton"),
                                         origin + ": skeleton"));

  double fps = kDefaultFps;
  if (auto value = root.optional_number("fps")) {
    fps = *value;
  } else if (warnings != nullptr) {
    warnings->push_back(origin + ": fps missing, defaulting to " +
                        canonical_number(kDefaultFps));
  }

  const nlohmann::json& frames_json = root.array("frames");
  std::vector<PoseFrame> frames;
  frames.reserve(frames_json.size());
  for (std::size_t f = 0; f < frames_json.size(); ++f) {
    const auto& frame_json = frames_json[f];
    const std::string frame_ctx =
        origin + ": frames[" + std::to_string(f) + "]";
    if (!frame_json.is_array()) {
      throw SchemaError("bad_type", frame_ctx + " must be an array");
    }
    PoseFrame frame;
    frame.positions.reserve(frame_json.size());
    for (const auto& coords : frame_json) {
      if (!coords.is_array()) {
        throw SchemaError("bad_type", frame_ctx + ": joints must be arrays");
      }
      if (coords.size() != 3) {
        throw SchemaError("coord_arity",
                          frame_ctx + ": joint entries must be [x, y, z]");
      }
      for (const auto& c : coords) {
        if (!c.is_number()) {
          throw SchemaError("bad_type",
                            frame_ctx + ": coordinates must be numbers");
        }
      }
      frame.positions.push_back({coords[0].get<double>(),
                                 coords[1].get<double>(),
                                 coords[2].get<double>()});
    }
    frames.push_back(std::move(frame));
  }
  root.finish(options, warnings);
  // The constructor enforces fps > 0, frame arity, and finite coordinates.
  return PoseSequence(std::move(skeleton), fps, std::move(frames));
}

inline nlohmann::json pose_to_json(const PoseSequence& seq) {
  nlohmann::json doc;
  doc["fps"] = seq.fps();
  doc["skeleton"] = seq.skeleton().joint_names();
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& frame : seq.frames()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& p : frame.positions) {
      row.push_back(nlohmann::json::array({p.x, p.y, p.z}));
    }
    frames.push_back(std::move(row));
  }
  doc["frames"] = std::move(frames);
  return doc;
}

inline std::string serialize_pose(const PoseSequence& seq) {
  return canonical_json(pose_to_json(seq));
}

// ---------------------------------------------------------------------------
// Kinematic configs

namespace detail {

inline MappingRule parse_rule(const nlohmann::json& rule_json,
                              const std::string& context,
                              ParseOptions options,
                              std::vector<std::string>* warnings) {
  ObjectReader reader(rule_json, context);
  MappingRule rule;
  rule.kind = rule_kind_from_string(reader.string("kind"), context);
  if (auto parent = reader.optional_string("parent")) rule.parent_joint = *parent;
  if (auto child = reader.optional_string("child")) rule.child_joint = *child;
  if (auto third = reader.optional_string("third")) rule.third_joint = *third;
  if (auto num = reader.optional_string("numerator_axis")) {
    rule.numerator_axis = axis_from_string(*num, context);
  }
  if (auto den = reader.optional_string("denominator_axis")) {
    rule.denominator_axis = axis_from_string(*den, context);
  }
  if (auto sign = reader.optional_number("sign")) rule.sign = *sign;
  if (auto scale = reader.optional_number("scale")) rule.scale = *scale;
  if (auto cv = reader.optional_number("constant_value")) {
    rule.constant_value = *cv;
  }
  if (rule_uses_joints(rule.kind)) {
    if (rule.parent_joint.empty()) {
      throw SchemaError("missing_key", context + ": missing key 'parent'");
    }
    if (rule.child_joint.empty()) {
      throw SchemaError("missing_key", context + ": missing key 'child'");
    }
  }
  reader.finish(options, warnings);
  return rule;
}

inline nlohmann::json rule_to_json(const MappingRule& rule) {
  nlohmann::json out;
  out["kind"] = rule_kind_to_string(rule.kind);
  switch (rule.kind) {
    case RuleKind::direction_pair:
      out["parent"] = rule.parent_joint;
      out["child"] = rule.child_joint;
      out["numerator_axis"] = axis_to_string(rule.numerator_axis);
      out["denominator_axis"] = axis_to_string(rule.denominator_axis);
      out["sign"] = rule.sign;
      out["scale"] = rule.scale;
      break;
    case RuleKind::interior_angle:
      out["parent"] = rule.parent_joint;
      out["child"] = rule.child_joint;
      out["third"] = rule.third_joint.value_or("");
      out["sign"] = rule.sign;
      out["scale"] = rule.scale;
      out["constant_value"] = rule.constant_value;
      break;
    case RuleKind::constant:
      out["constant_value"] = rule.constant_value;
      break;
  }
  return out;
}

}  // namespace detail

inline KinematicConfig parse_config_json(
    const std::string& text, ParseOptions options = {},
    std::vector<std::string>* warnings = nullptr,
    const std::string& origin = "<config>") {
  const nlohmann::json doc = detail::parse_document(text, origin);
  detail::ObjectReader root(doc, origin);

  KinematicConfig config{Skeleton(detail::string_array(
                             root.array("skeleton"), origin + ": skeleton")),
                         {}};

  const nlohmann::json& joints_json = root.array("joints");
  config.joints.reserve(joints_json.size());
  for (std::size_t i = 0; i < joints_json.size(); ++i) {
    const std::string ctx = origin + ": joints[" + std::to_string(i) + "]";
    detail::ObjectReader reader(joints_json[i], ctx);
    JointSpec spec;
    spec.name = reader.string("name");
    spec.rule = detail::parse_rule(reader.require("rule"), ctx + ".rule",
                                   options, warnings);
    spec.angle_min = reader.number("angle_min");
    spec.angle_max = reader.number("angle_max");
    spec.vel_max = reader.number("vel_max");
    reader.finish(options, warnings);
    config.joints.push_back(std::move(spec));
  }
  root.finish(options, warnings);

  const std::vector<Violation> violations = validate_config(config);
  if (!violations.empty()) {
    std::string message = origin + ": invalid config:";
    for (const auto& v : violations) message += "\n  " + v.message;
    throw SchemaError(violations.front().code, message);
  }
  return config;
}

inline nlohmann::json config_to_json(const KinematicConfig& config) {
  nlohmann::json doc;
  doc["skeleton"] = config.skeleton.joint_names();
  nlohmann::json joints = nlohmann::json::array();
  for (const auto& spec : config.joints) {
    nlohmann::json j;
    j["name"] = spec.name;
    j["rule"] = detail::rule_to_json(spec.rule);
    j["angle_min"] = spec.angle_min;
    j["angle_max"] = spec.angle_max;
    j["vel_max"] = spec.vel_max;
    joints.push_back(std::move(j));
  }
  doc["joints"] = std::move(joints);
  return doc;
}

inline std::string serialize_config(const KinematicConfig& config) {
  return canonical_json(config_to_json(config));
}

// ---------------------------------------------------------------------------
// Trajectories

inline JointTrajectory parse_trajectory_json(
    const std::string& text, ParseOptions options = {},
    std::vector<std::string>* warnings = nullptr,
    const std::string& origin = "<trajectory>") {
  const nlohmann::json doc = detail::parse_document(text, origin);
  detail::ObjectReader root(doc, origin);

  JointTrajectory traj;
  traj.fps = root.number("fps");
  if (!(traj.fps > 0.0) || !std::isfinite(traj.fps)) {
    throw SchemaError("fps_nonpositive",
                      origin + ": fps must be a finite positive number");
  }
  traj.joint_names =
      detail::string_array(root.array("joints"), origin + ": joints");
  std::set<std::string> seen;
  for (const auto& name : traj.joint_names) {
    if (!seen.insert(name).second) {
      throw SchemaError("duplicate_joint",
                        origin + ": duplicate trajectory joint '" + name + "'");
    }
  }
  traj.duration = root.optional_number("duration");

  const nlohmann::json& frames_json = root.array("frames");
  if (frames_json.empty()) {
    throw SchemaError("no_frames", origin + ": trajectory has no frames");
  }
  traj.samples.reserve(frames_json.size());
  for (std::size_t f = 0; f < frames_json.size(); ++f) {
    const auto& row_json = frames_json[f];
    const std::string ctx = origin + ": frames[" + std::to_string(f) + "]";
    if (!row_json.is_array()) {
      throw SchemaError("bad_type", ctx + " must be an array");
    }
    if (row_json.size() != traj.joint_names.size()) {
      throw SchemaError("ragged_frames",
                        ctx + " has " + std::to_string(row_json.size()) +
                            " angles, expected " +
                            std::to_string(traj.joint_names.size()));
    }
    std::vector<double> row;
    row.reserve(row_json.size());
    for (const auto& v : row_json) {
      if (!v.is_number()) {
        throw SchemaError("bad_type", ctx + ": angles must be numbers");
      }
      const double angle = v.get<double>();
      if (!std::isfinite(angle)) {
        throw SchemaError("nonfinite_value", ctx + ": non-finite angle");
      }
      row.push_back(angle);
    }
    traj.samples.push_back(std::move(row));
  }
  root.finish(options, warnings);
  return traj;
}

inline nlohmann::json trajectory_to_json(const JointTrajectory& traj) {
  nlohmann::json doc;
  if (traj.duration) doc["duration"] = *traj.duration;
  doc["fps"] = traj.fps;
  doc["joints"] = traj.joint_names;
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& row : traj.samples) frames.push_back(row);
  doc["frames"] = std::move(frames);
  return doc;
}

inline std::string serialize_trajectory(const JointTrajectory& traj) {
  return canonical_json(trajectory_to_json(traj));
}

// CSV rendering: header `time,<joint...>`, one row per frame, time in
// seconds (frame_index / fps), canonical number formatting throughout.
inline std::string serialize_trajectory_csv(const JointTrajectory& traj) {
  std::string out = "time";
  for (const auto& name : traj.joint_names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t f = 0; f < traj.samples.size(); ++f) {
    out += canonical_number(static_cast<double>(f) / traj.fps);
    for (const double angle : traj.samples[f]) {
      out += ',';
      out += canonical_number(angle);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Timeline export (the names/angleLists/timeLists triple of the robot
// middleware's angle-interpolation call)

struct TimelineExport {
  std::vector<std::string> names;
  std::vector<std::vector<double>> angle_lists;
  std::vector<std::vector<double>> time_lists;  // seconds, strictly increasing
};

inline TimelineExport to_timeline(const JointTrajectory& traj) {
  TimelineExport timeline;
  timeline.names = traj.joint_names;
  timeline.angle_lists.resize(traj.joint_names.size());
  timeline.time_lists.resize(traj.joint_names.size());
  for (std::size_t j = 0; j < traj.joint_names.size(); ++j) {
    timeline.angle_lists[j].reserve(traj.samples.size());
    timeline.time_lists[j].reserve(traj.samples.size());
    for (std::size_t f = 0; f < traj.samples.size(); ++f) {
      timeline.angle_lists[j].push_back(traj.samples[f][j]);
      // Times are relative future targets, so the first one must be > 0.
      timeline.time_lists[j].push_back(static_cast<double>(f + 1) / traj.fps);
    }
  }
  return timeline;
}

inline std::vector<Violation> validate_timeline(const TimelineExport& timeline) {
  std::vector<Violation> violations;
  if (timeline.names.size() != timeline.angle_lists.size() ||
      timeline.names.size() != timeline.time_lists.size()) {
    violations.push_back({"length_mismatch",
                          "names, angleLists and timeLists sizes differ"});
    return violations;
  }
  for (std::size_t j = 0; j < timeline.names.size(); ++j) {
    if (timeline.angle_lists[j].size() != timeline.time_lists[j].size()) {
      violations.push_back(
          {"length_mismatch", "joint '" + timeline.names[j] +
                                  "': angleList and timeList sizes differ"});
    }
    double previous = 0.0;  // times must start above zero
    for (const double t : timeline.time_lists[j]) {
      if (!(t > previous)) {
        violations.push_back(
            {"times_not_increasing",
             "joint '" + timeline.names[j] +
                 "': times must be strictly increasing and start > 0"});
        break;
      }
      previous = t;
    }
  }
  return violations;
}

inline nlohmann::json timeline_to_json(const TimelineExport& timeline) {
  nlohmann::json doc;
  doc["names"] = timeline.names;
  nlohmann::json angles = nlohmann::json::array();
  for (const auto& list : timeline.angle_lists) angles.push_back(list);
  doc["angleLists"] = std::move(angles);
  nlohmann::json times = nlohmann::json::array();
  for (const auto& list : timeline.time_lists) times.push_back(list);
  doc["timeLists"] = std::move(times);
  return doc;
}

inline std::string serialize_timeline(const TimelineExport& timeline) {
  return canonical_json(timeline_to_json(timeline));
}

// ---------------------------------------------------------------------------
// Metrics report

inline nlohmann::json metrics_report_to_json(const MetricsReport& report) {
  nlohmann::json doc;
  doc["per_item_variance"] = nlohmann::json::object();
  for (const auto& [id, var] : report.per_item_variance) {
    doc["per_item_variance"][id] = var;
  }
  if (report.fgd) {
    doc["fgd"] = nlohmann::json::object();
    for (const auto& [pair, value] : *report.fgd) doc["fgd"][pair] = value;
  }
  if (report.style_ids) {
    doc["style_ids"] = {{"introvert", (*report.style_ids)[0]},
                        {"normal", (*report.style_ids)[1]},
                        {"extrovert", (*report.style_ids)[2]}};
  }
  return doc;
}

// ---------------------------------------------------------------------------
// File-level wrappers

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading file: " + path.string());
  }
  return buffer.str();
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open file for writing: " + path.string());
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("failed writing file: " + path.string());
  }
}

inline PoseSequence read_pose_file(const std::filesystem::path& path,
                                   ParseOptions options = {},
                                   std::vector<std::string>* warnings = nullptr) {
  return parse_pose_json(read_text_file(path), options, warnings, path.string());
}

inline KinematicConfig read_config(const std::filesystem::path& path,
                                   ParseOptions options = {},
                                   std::vector<std::string>* warnings = nullptr) {
  return parse_config_json(read_text_file(path), options, warnings,
                           path.string());
}

inline JointTrajectory read_trajectory(
    const std::filesystem::path& path, ParseOptions options = {},
    std::vector<std::string>* warnings = nullptr) {
  return parse_trajectory_json(read_text_file(path), options, warnings,
                               path.string());
}

enum class TrajectoryFormat { json, csv, timeline };

inline void write_trajectory(const JointTrajectory& traj,
                             const std::filesystem::path& path,
                             TrajectoryFormat format = TrajectoryFormat::json) {
  switch (format) {
    case TrajectoryFormat::json:
      write_text_file(path, serialize_trajectory(traj));
      break;
    case TrajectoryFormat::csv:
      write_text_file(path, serialize_trajectory_csv(traj));
      break;
    case TrajectoryFormat::timeline:
      write_text_file(path, serialize_timeline(to_timeline(traj)));
      break;
  }
}

}  // namespace robogest

#endif  // ROBOGEST_FORMATS_HPP_
