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

#ifndef ROBOGEST_RETARGET_HPP_
#define ROBOGEST_RETARGET_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "robogest/core.hpp"
#include "robogest/errors.hpp"

// Pose -> robot joint angles. The direction-pair rule measures a bone's
// planar direction with atan2, shifts it by pi so that an upright bone
// (pointing along -denominator axis) reads zero, and scales it by a manual
// gain. Interior-angle rules cover joints like elbows where only the bend
// matters. All functions here are pure; per-frame evaluation is safe to run
// in parallel.

namespace robogest {

inline constexpr double kPi = std::numbers::pi;

// Angles of one retargeted frame, keyed by robot joint name.
struct AngleFrame {
  std::map<std::string, double> angles;
};

// What to do when a frame hits an undefined direction angle.
enum class DegeneratePolicy { hold_previous, zero, fail };

// Planar direction angle of the bone a->b: atan2 of the numerator-axis
// component over the denominator-axis component of (b - a). Result in
// (-pi, pi]. Throws DegenerateBoneError when both selected components are
// exactly zero (bone perpendicular to the measurement plane, or zero-length).
inline double raw_direction_angle(const Vec3& a, const Vec3& b,
                                  Axis numerator_axis, Axis denominator_axis) {
  const Vec3 d = b - a;
  const double num = component(d, numerator_axis);
  const double den = component(d, denominator_axis);
  if (num == 0.0 && den == 0.0) {
    throw DegenerateBoneError(
        "bone has no extent in the selected measurement plane");
  }
  double angle = std::atan2(num, den);
  if (angle == -kPi) angle = kPi;  // normalize to (-pi, pi]
  return angle;
}

// Recentering step applied to a raw direction angle: raw angles near +/-pi
// (upright bone) map to outputs near zero. raw < 0 uses the +pi branch,
// raw > 0 the -pi branch; raw == 0 (fully inverted bone, physically
// unreachable) follows the raw > 0 branch and is left to joint-limit
// clamping. |result| <= pi * scale.
inline double shifted_scaled_angle(double raw, double sign, double scale) {
  const double shifted = raw < 0.0 ? raw + kPi : raw - kPi;
  return sign * scale * shifted;
}

// Hip roll and pitch from the hip->spine bone: roll measures the (x, y)
// plane with gain m, pitch the (z, y) plane with gain n and flipped sign.
// Exactly the composition of raw_direction_angle and shifted_scaled_angle,
// bit for bit.
inline std::pair<double, double> hip_angles(const Vec3& a, const Vec3& b,
                                            double m, double n) {
  const double roll =
      shifted_scaled_angle(raw_direction_angle(a, b, Axis::x, Axis::y), 1.0, m);
  const double pitch = shifted_scaled_angle(
      raw_direction_angle(a, b, Axis::z, Axis::y), -1.0, n);
  return {roll, pitch};
}

// Angle at vertex b between the segments b->a and b->c, in [0, pi].
// Throws DegenerateBoneError when either segment has zero length.
inline double interior_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 u = a - b;
  const Vec3 v = c - b;
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) {
    throw DegenerateBoneError("zero-length segment at interior-angle vertex");
  }
  const double cosine = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  return std::acos(cosine);
}

namespace detail {

// MappingRule with joint names resolved to frame indices.
struct ResolvedRule {
  std::string joint_name;
  RuleKind kind = RuleKind::constant;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
  Axis numerator_axis = Axis::x;
  Axis denominator_axis = Axis::y;
  double sign = 1.0;
  double scale = 1.0;
  double constant_value = 0.0;
};

inline std::size_t resolve_joint(const Skeleton& skeleton,
                                 const std::string& name,
                                 const std::string& robot_joint) {
  auto index = skeleton.index_of(name);
  if (!index) {
    throw UnknownJointError("joint '" + robot_joint + "': rule references '" +
                            name + "', not a skeleton joint");
  }
  return *index;
}

inline std::vector<ResolvedRule> resolve_rules(const KinematicConfig& config) {
  std::vector<ResolvedRule> rules;
  rules.reserve(config.joints.size());
  for (const auto& joint : config.joints) {
    ResolvedRule r;
    r.joint_name = joint.name;
    r.kind = joint.rule.kind;
    r.numerator_axis = joint.rule.numerator_axis;
    r.denominator_axis = joint.rule.denominator_axis;
    r.sign = joint.rule.sign;
    r.scale = joint.rule.scale;
    r.constant_value = joint.rule.constant_value;
    if (rule_uses_joints(r.kind)) {
      r.a = resolve_joint(config.skeleton, joint.rule.parent_joint, joint.name);
      r.b = resolve_joint(config.skeleton, joint.rule.child_joint, joint.name);
      if (r.kind == RuleKind::interior_angle) {
        if (!joint.rule.third_joint) {
          throw SchemaError("third_joint_missing",
                            "joint '" + joint.name +
                                "': interior_angle needs a third joint");
        }
        r.c = resolve_joint(config.skeleton, *joint.rule.third_joint,
                            joint.name);
      }
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

inline double eval_rule(const ResolvedRule& rule, const PoseFrame& frame) {
  try {
    switch (rule.kind) {
      case RuleKind::direction_pair:
        return shifted_scaled_angle(
            raw_direction_angle(frame.positions[rule.a],
                                frame.positions[rule.b], rule.numerator_axis,
                                rule.denominator_axis),
            rule.sign, rule.scale);
      case RuleKind::interior_angle:
        // Recentered at pi so a straight chain reads exactly zero; acos(-1)
        // is exact, a stored pi would not survive 9-decimal serialization.
        return rule.sign * rule.scale *
               (interior_angle(frame.positions[rule.a], frame.positions[rule.b],
                               frame.positions[rule.c]) -
                kPi + rule.constant_value);
      case RuleKind::constant:
        return rule.constant_value;
    }
  } catch (const DegenerateBoneError& e) {
    throw DegenerateBoneError(std::string(e.what()) + " (joint '" +
                                  rule.joint_name + "')",
                              rule.joint_name);
  }
  return 0.0;  // unreachable
}

}  // namespace detail

// Evaluates every configured rule against one frame. Throws
// DegenerateBoneError (carrying the robot joint name) on the first undefined
// angle; sequence-level policy handling lives in retarget_sequence.
inline AngleFrame retarget_frame(const PoseFrame& frame,
                                 const KinematicConfig& config) {
  AngleFrame out;
  for (const auto& rule : detail::resolve_rules(config)) {
    out.angles[rule.joint_name] = detail::eval_rule(rule, frame);
  }
  return out;
}

// Retargets every frame. Output has the input's fps and frame count and one
// column per configured joint, in config order. A joint whose rule is
// degenerate in some frame is handled per policy: hold_previous repeats that
// joint's last emitted angle (zero on the first frame), zero emits 0, fail
// aborts with the DegenerateBoneError.
inline JointTrajectory retarget_sequence(
    const PoseSequence& seq, const KinematicConfig& config,
    DegeneratePolicy policy = DegeneratePolicy::hold_previous) {
  const auto rules = detail::resolve_rules(config);
  JointTrajectory traj;
  traj.fps = seq.fps();
  traj.joint_names.reserve(rules.size());
  for (const auto& rule : rules) traj.joint_names.push_back(rule.joint_name);
  traj.samples.resize(seq.frame_count(),
                      std::vector<double>(rules.size(), 0.0));

  for (std::size_t f = 0; f < seq.frame_count(); ++f) {
    const PoseFrame& frame = seq.frames()[f];
    for (std::size_t j = 0; j < rules.size(); ++j) {
      try {
        traj.samples[f][j] = detail::eval_rule(rules[j], frame);
      } catch (const DegenerateBoneError& e) {
        switch (policy) {
          case DegeneratePolicy::hold_previous:
            traj.samples[f][j] = f > 0 ? traj.samples[f - 1][j] : 0.0;
            break;
          case DegeneratePolicy::zero:
            traj.samples[f][j] = 0.0;
            break;
          case DegeneratePolicy::fail:
            throw DegenerateBoneError(std::string(e.what()) + " at frame " +
                                          std::to_string(f),
                                      e.joint());
        }
      }
    }
  }
  return traj;
}

}  // namespace robogest

#endif  // ROBOGEST_RETARGET_HPP_
