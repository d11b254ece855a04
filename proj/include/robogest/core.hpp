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

#ifndef ROBOGEST_CORE_HPP_
#define ROBOGEST_CORE_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "robogest/errors.hpp"

// Shared data model: poses, kinematic configuration, trajectories. All types
// are immutable value data after construction and safe to share across
// threads.

namespace robogest {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

enum class Axis { x, y, z };

inline double component(const Vec3& v, Axis axis) {
  switch (axis) {
    case Axis::x: return v.x;
    case Axis::y: return v.y;
    case Axis::z: return v.z;
  }
  return v.x;  // unreachable
}

// Named, ordered joint layout of the input stick figure. The frame layout is
// positional: PoseFrame index i is the position of joint_names()[i].
class Skeleton {
 public:
  static constexpr std::size_t kJointCount = 10;

  explicit Skeleton(std::vector<std::string> joint_names)
      : joint_names_(std::move(joint_names)) {
    if (joint_names_.size() != kJointCount) {
      throw SchemaError("skeleton_size",
                        "skeleton must name exactly " +
                            std::to_string(kJointCount) + " joints, got " +
                            std::to_string(joint_names_.size()));
    }
    std::set<std::string> seen;
    for (const auto& name : joint_names_) {
      if (!seen.insert(name).second) {
        throw SchemaError("duplicate_joint",
                          "duplicate skeleton joint name: " + name);
      }
    }
  }

  // Default upper-body layout used by the shipped fixtures. Other orderings
  // work as long as the pose files and the kinematic config agree.
  static Skeleton canonical() {
    return Skeleton({"hip", "spine", "neck", "head", "r_shoulder", "r_elbow",
                     "r_wrist", "l_shoulder", "l_elbow", "l_wrist"});
  }

  const std::vector<std::string>& joint_names() const { return joint_names_; }
  std::size_t size() const { return joint_names_.size(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < joint_names_.size(); ++i) {
      if (joint_names_[i] == name) return i;
    }
    return std::nullopt;
  }

  bool operator==(const Skeleton& o) const {
    return joint_names_ == o.joint_names_;
  }

 private:
  std::vector<std::string> joint_names_;
};

// One timed sample of all skeleton joints, in skeleton order.
struct PoseFrame {
  std::vector<Vec3> positions;
};

// Timed frames of 3-D joint positions. Frame interval is 1/fps. Construction
// rejects wrong-arity frames and non-finite coordinates, so downstream code
// never sees them.
class PoseSequence {
 public:
  PoseSequence(Skeleton skeleton, double fps, std::vector<PoseFrame> frames)
      : skeleton_(std::move(skeleton)), fps_(fps), frames_(std::move(frames)) {
    if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
      throw SchemaError("fps_nonpositive",
                        "fps must be a finite positive number");
    }
    if (frames_.empty()) {
      throw SchemaError("no_frames", "pose sequence needs at least one frame");
    }
    for (std::size_t f = 0; f < frames_.size(); ++f) {
      if (frames_[f].positions.size() != skeleton_.size()) {
        throw SchemaError(
            "joint_arity",
            "frame " + std::to_string(f) + " has " +
                std::to_string(frames_[f].positions.size()) +
                " joints, skeleton has " + std::to_string(skeleton_.size()));
      }
      for (std::size_t j = 0; j < frames_[f].positions.size(); ++j) {
        if (!frames_[f].positions[j].finite()) {
          throw SchemaError("nonfinite_value",
                            "non-finite coordinate at frame " +
                                std::to_string(f) + ", joint " +
                                std::to_string(j));
        }
      }
    }
  }

  const Skeleton& skeleton() const { return skeleton_; }
  double fps() const { return fps_; }
  const std::vector<PoseFrame>& frames() const { return frames_; }
  std::size_t frame_count() const { return frames_.size(); }

  // Same frames retimed at a different rate.
  PoseSequence with_fps(double fps) const {
    return PoseSequence(skeleton_, fps, frames_);
  }

 private:
  Skeleton skeleton_;
  double fps_;
  std::vector<PoseFrame> frames_;
};

enum class RuleKind { direction_pair, interior_angle, constant };

// Grid step of the canonical on-disk number rendering (9 decimal places,
// see canonical_json.hpp). Angle-domain code that must survive a file
// round-trip budgets against this.
inline constexpr double kCanonicalQuantum = 1e-9;

// Declarative recipe for one robot joint angle. Three kinds:
//   direction_pair  atan2 of the (numerator, denominator) components of the
//                   bone parent->child, shifted by pi and scaled; this is the
//                   hip-style rule.
//   interior_angle  angle at the vertex `child` between `parent` and `third`,
//                   recentered at the straight pose:
//                   sign * scale * (angle - pi + constant_value). A straight
//                   chain reads exactly zero; constant_value offsets from
//                   straight and so stays exactly representable on disk.
//   constant        always emits constant_value.
// `scale` houses the manual gain constants (the hip ships with 0.3).
struct MappingRule {
  RuleKind kind = RuleKind::direction_pair;
  std::string parent_joint;                 // point A (unused for constant)
  std::string child_joint;                  // point B (unused for constant)
  std::optional<std::string> third_joint;   // point C, interior_angle only
  Axis numerator_axis = Axis::x;            // direction_pair only
  Axis denominator_axis = Axis::y;          // direction_pair only
  double sign = 1.0;                        // +1 or -1
  double scale = 1.0;
  double constant_value = 0.0;  // output (constant) or offset from straight
                                // (interior_angle), radians
};

// One robot joint: its mapping rule plus the vendor-style limit data.
struct JointSpec {
  std::string name;
  MappingRule rule;
  double angle_min = 0.0;  // radians
  double angle_max = 0.0;  // radians
  double vel_max = 0.0;    // radians/second
};

struct KinematicConfig {
  Skeleton skeleton = Skeleton::canonical();
  std::vector<JointSpec> joints;
};

// Per-joint angle samples over time. Rectangular: samples[frame][joint]
// aligned with joint_names.
struct JointTrajectory {
  double fps = 0.0;
  std::vector<std::string> joint_names;
  std::vector<std::vector<double>> samples;
  std::optional<double> duration;  // intended clip length metadata, seconds

  std::size_t frame_count() const { return samples.size(); }
};

// A single config-invariant violation. Violations are data, not failures:
// validate_config reports all of them instead of stopping at the first.
struct Violation {
  std::string code;
  std::string message;
};

namespace detail {

inline bool rule_uses_joints(RuleKind kind) {
  return kind != RuleKind::constant;
}

inline void check_joint_ref(const Skeleton& skeleton, const std::string& name,
                            const std::string& robot_joint, const char* role,
                            std::vector<Violation>& out) {
  if (!skeleton.index_of(name)) {
    out.push_back({"unknown_joint", "joint '" + robot_joint + "': rule " +
                                        role + " '" + name +
                                        "' is not a skeleton joint"});
  }
}

}  // namespace detail

// Checks every KinematicConfig invariant and returns one entry per violation,
// each with a stable machine-readable code. Empty result means valid.
inline std::vector<Violation> validate_config(const KinematicConfig& config) {
  std::vector<Violation> violations;
  std::set<std::string> names;
  for (const auto& joint : config.joints) {
    if (!names.insert(joint.name).second) {
      violations.push_back(
          {"duplicate_joint", "duplicate robot joint name: " + joint.name});
    }
    if (!(joint.angle_min < joint.angle_max)) {
      violations.push_back(
          {"limits_degenerate", "joint '" + joint.name +
                                    "': angle_min must be < angle_max"});
    }
    if (!(joint.vel_max > 0.0)) {
      violations.push_back(
          {"vel_max_nonpositive",
           "joint '" + joint.name + "': vel_max must be > 0"});
    }
    const MappingRule& rule = joint.rule;
    if (rule.sign != 1.0 && rule.sign != -1.0) {
      violations.push_back(
          {"sign_invalid", "joint '" + joint.name + "': sign must be +1 or -1"});
    }
    if (detail::rule_uses_joints(rule.kind)) {
      detail::check_joint_ref(config.skeleton, rule.parent_joint, joint.name,
                              "parent", violations);
      detail::check_joint_ref(config.skeleton, rule.child_joint, joint.name,
                              "child", violations);
      if (!(rule.scale > 0.0)) {
        violations.push_back(
            {"scale_nonpositive",
             "joint '" + joint.name + "': scale must be > 0"});
      }
    }
    if (rule.kind == RuleKind::direction_pair &&
        rule.numerator_axis == rule.denominator_axis) {
      violations.push_back(
          {"axis_conflict",
           "joint '" + joint.name +
               "': numerator and denominator axes must differ"});
    }
    if (rule.kind == RuleKind::interior_angle) {
      if (!rule.third_joint) {
        violations.push_back(
            {"third_joint_missing",
             "joint '" + joint.name + "': interior_angle needs a third joint"});
      } else {
        detail::check_joint_ref(config.skeleton, *rule.third_joint, joint.name,
                                "third", violations);
      }
    } else if (rule.third_joint) {
      violations.push_back(
          {"third_joint_unexpected",
           "joint '" + joint.name +
               "': third joint is only valid for interior_angle rules"});
    }
  }
  return violations;
}

// Variance statistics, pairwise gesture-set distances, and the selected
// style representatives.
struct MetricsReport {
  std::map<std::string, double> per_item_variance;            // pose units^2
  std::optional<std::map<std::string, double>> fgd;           // set pair -> d^2
  std::optional<std::array<std::string, 3>> style_ids;        // intro/normal/extro
};

}  // namespace robogest

#endif  // ROBOGEST_CORE_HPP_
