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

#ifndef ROBOGEST_LIMITER_HPP_
#define ROBOGEST_LIMITER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "robogest/core.hpp"
#include "robogest/errors.hpp"

// Feasibility enforcement on trajectories: angle-limit clamping and the
// per-step maximum-velocity adjustment. Per-joint passes are independent;
// within one joint the velocity pass is strictly sequential (each step sees
// the already-adjusted previous sample, like a robot executing in order).
//
// The shipped pipeline order is limit_velocity, then clamp_limits, then
// validate_trajectory; validation must report feasible on that composition.

namespace robogest {

// Slack for the velocity feasibility comparison, absorbing one rounding step
// of the adjusted samples.
inline constexpr double kVelocityTolerance = 1e-9;

// Offline dry-run summary standing in for live playback.
struct FeasibilityReport {
  std::map<std::string, double> per_joint_max_velocity;   // rad/s
  std::map<std::string, std::size_t> per_joint_limit_hits;
  bool feasible = false;
};

namespace detail {

inline std::map<std::string, const JointSpec*> joint_index(
    const KinematicConfig& config) {
  std::map<std::string, const JointSpec*> index;
  for (const auto& joint : config.joints) index[joint.name] = &joint;
  return index;
}

inline const JointSpec& spec_for(
    const std::map<std::string, const JointSpec*>& index,
    const std::string& name) {
  auto it = index.find(name);
  if (it == index.end()) {
    throw UnknownJointError("trajectory joint '" + name +
                            "' is not in the kinematic config");
  }
  return *it->second;
}

}  // namespace detail

// Clamps every sample into its joint's [angle_min, angle_max]. Shape
// preserved; idempotent.
inline JointTrajectory clamp_limits(const JointTrajectory& traj,
                                    const KinematicConfig& config) {
  const auto index = detail::joint_index(config);
  JointTrajectory out = traj;
  for (std::size_t j = 0; j < traj.joint_names.size(); ++j) {
    const JointSpec& spec = detail::spec_for(index, traj.joint_names[j]);
    for (auto& frame : out.samples) {
      frame[j] = std::min(std::max(frame[j], spec.angle_min), spec.angle_max);
    }
  }
  return out;
}

// Per-step velocity cap with t = 1/fps. Walking each joint left to right:
// when the step from the already-adjusted previous sample exceeds
// vel_max * t, the sample becomes previous +/- vel_max * t (sign of the
// step); otherwise it is untouched. The first sample is never modified.
// Idempotent, identity on already-feasible input, and every output step
// satisfies |delta| * fps <= vel_max.
inline JointTrajectory limit_velocity(const JointTrajectory& traj,
                                      const KinematicConfig& config) {
  const auto index = detail::joint_index(config);
  const double t = 1.0 / traj.fps;
  JointTrajectory out = traj;
  for (std::size_t j = 0; j < traj.joint_names.size(); ++j) {
    const JointSpec& spec = detail::spec_for(index, traj.joint_names[j]);
    const double max_step = spec.vel_max * t;
    for (std::size_t i = 1; i < out.samples.size(); ++i) {
      const double prev = out.samples[i - 1][j];
      const double delta = traj.samples[i][j] - prev;
      if (std::abs(delta) > max_step) {
        out.samples[i][j] = prev + std::copysign(max_step, delta);
      }
    }
  }
  return out;
}

// Reports per-joint peak speed (max |delta| * fps over steps), out-of-limit
// sample counts, and overall feasibility: every peak speed within vel_max
// and zero limit hits. The velocity comparison allows kVelocityTolerance
// plus one canonical-format quantization step scaled to a rate: a trajectory
// written to disk moves each sample by up to half a grid step, so a
// maximally-limited file would otherwise read back infeasible.
inline FeasibilityReport validate_trajectory(const JointTrajectory& traj,
                                             const KinematicConfig& config) {
  const auto index = detail::joint_index(config);
  const double velocity_slack = kVelocityTolerance + kCanonicalQuantum * traj.fps;
  FeasibilityReport report;
  report.feasible = true;
  for (std::size_t j = 0; j < traj.joint_names.size(); ++j) {
    const std::string& name = traj.joint_names[j];
    const JointSpec& spec = detail::spec_for(index, name);
    double max_velocity = 0.0;
    std::size_t limit_hits = 0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
      const double angle = traj.samples[i][j];
      if (angle < spec.angle_min || angle > spec.angle_max) ++limit_hits;
      if (i > 0) {
        const double speed =
            std::abs(angle - traj.samples[i - 1][j]) * traj.fps;
        max_velocity = std::max(max_velocity, speed);
      }
    }
    report.per_joint_max_velocity[name] = max_velocity;
    report.per_joint_limit_hits[name] = limit_hits;
    if (max_velocity > spec.vel_max + velocity_slack || limit_hits > 0) {
      report.feasible = false;
    }
  }
  return report;
}

}  // namespace robogest

#endif  // ROBOGEST_LIMITER_HPP_
