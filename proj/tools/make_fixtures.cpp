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

// Regenerates the shipped fixture set (poses, config, goldens) into a target
// directory, fixtures/ by default. Fully deterministic; the committed files
// are exactly this program's output.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "robogest/robogest.hpp"

namespace fs = std::filesystem;
using namespace robogest;

namespace {

constexpr double kTau = 2.0 * kPi;

// Upright rest pose on the canonical skeleton. The y axis grows downward
// (image convention), so anatomically "up" bones point toward -y.
PoseFrame rest_frame() {
  PoseFrame frame;
  frame.positions = {
      {0.0, 0.0, 0.0},      // hip
      {0.0, -0.20, 0.0},    // spine
      {0.0, -0.45, 0.0},    // neck
      {0.0, -0.60, 0.0},    // head
      {0.15, -0.45, 0.0},   // r_shoulder
      {0.15, -0.20, 0.0},   // r_elbow
      {0.15, 0.05, 0.0},    // r_wrist
      {-0.15, -0.45, 0.0},  // l_shoulder
      {-0.15, -0.20, 0.0},  // l_elbow
      {-0.15, 0.05, 0.0},   // l_wrist
  };
  return frame;
}

JointSpec direction_joint(const std::string& name, const std::string& parent,
                          const std::string& child, Axis num, Axis den,
                          double sign, double scale, double angle_min,
                          double angle_max, double vel_max) {
  JointSpec spec;
  spec.name = name;
  spec.rule.kind = RuleKind::direction_pair;
  spec.rule.parent_joint = parent;
  spec.rule.child_joint = child;
  spec.rule.numerator_axis = num;
  spec.rule.denominator_axis = den;
  spec.rule.sign = sign;
  spec.rule.scale = scale;
  spec.angle_min = angle_min;
  spec.angle_max = angle_max;
  spec.vel_max = vel_max;
  return spec;
}

JointSpec elbow_joint(const std::string& name, const std::string& shoulder,
                      const std::string& elbow, const std::string& wrist,
                      double sign, double angle_min, double angle_max) {
  JointSpec spec;
  spec.name = name;
  spec.rule.kind = RuleKind::interior_angle;
  spec.rule.parent_joint = shoulder;
  spec.rule.child_joint = elbow;
  spec.rule.third_joint = wrist;
  spec.rule.sign = sign;
  spec.rule.scale = 1.0;
  spec.rule.constant_value = 0.0;  // straight arm reads zero
  spec.angle_min = angle_min;
  spec.angle_max = angle_max;
  spec.vel_max = 7.34;
  return spec;
}

// Pepper-like upper-body config: hip direction rules with gain 0.3,
// shoulders measured on the upward elbow->shoulder bone so the rest pose
// cancels, elbows as recentered interior angles, head yaw pinned.
KinematicConfig pepper_like_config() {
  KinematicConfig config{Skeleton::canonical(), {}};
  config.joints = {
      direction_joint("HipRoll", "hip", "spine", Axis::x, Axis::y, 1.0, 0.3,
                      -0.5149, 0.5149, 2.27),
      direction_joint("HipPitch", "hip", "spine", Axis::z, Axis::y, -1.0, 0.3,
                      -1.0385, 1.0385, 2.93),
      direction_joint("HeadPitch", "neck", "head", Axis::z, Axis::y, -1.0, 1.0,
                      -0.7068, 0.6371, 7.0),
      JointSpec{"HeadYaw",
                MappingRule{RuleKind::constant, "", "", std::nullopt, Axis::x,
                            Axis::y, 1.0, 1.0, 0.0},
                -2.0857, 2.0857, 7.0},
      direction_joint("RShoulderPitch", "r_elbow", "r_shoulder", Axis::z,
                      Axis::y, 1.0, 1.0, -2.0857, 2.0857, 7.34),
      direction_joint("RShoulderRoll", "r_elbow", "r_shoulder", Axis::x,
                      Axis::y, -1.0, 1.0, -1.5620, 0.1, 7.34),
      elbow_joint("RElbowRoll", "r_shoulder", "r_elbow", "r_wrist", -1.0, 0.0,
                  1.5620),
      direction_joint("LShoulderPitch", "l_elbow", "l_shoulder", Axis::z,
                      Axis::y, 1.0, 1.0, -2.0857, 2.0857, 7.34),
      direction_joint("LShoulderRoll", "l_elbow", "l_shoulder", Axis::x,
                      Axis::y, -1.0, 1.0, -0.1, 1.5620, 7.34),
      elbow_joint("LElbowRoll", "l_shoulder", "l_elbow", "l_wrist", 1.0,
                  -1.5620, 0.0),
  };
  return config;
}

Vec3 normalized(const Vec3& v) {
  const double n = v.norm();
  return {v.x / n, v.y / n, v.z / n};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

// Arm with the upper arm abducted by psi in the (x, y) plane (front wobble
// fz) and the elbow bent to interior angle chi.
void place_arm(PoseFrame& frame, std::size_t shoulder, std::size_t elbow,
               std::size_t wrist, double side, double psi, double fz,
               double chi) {
  const Vec3 upper{side * std::sin(psi) * 0.25, std::cos(psi) * 0.25,
                   fz * 0.25};
  frame.positions[elbow] = frame.positions[shoulder] + upper;
  const Vec3 u = normalized(upper);
  const Vec3 p = normalized(cross(u, Vec3{0.0, 0.0, 1.0}));
  const double along = std::cos(kPi - chi);
  const double across = std::sin(kPi - chi);
  const Vec3 forearm = u * along + p * across;
  frame.positions[wrist] = frame.positions[elbow] + forearm * 0.2;
}

// 30-frame synthetic wave: torso sway, head nod, fast right-arm wave with an
// elbow oscillation quick enough to trip the velocity limiter, calm left arm.
PoseSequence wave_sequence() {
  std::vector<PoseFrame> frames;
  for (int i = 0; i < 30; ++i) {
    const double phase = kTau * i / 30.0;
    PoseFrame frame = rest_frame();

    const double tilt_x = 0.15 * std::sin(phase);
    const double tilt_z = 0.10 * std::cos(phase);
    frame.positions[1] = {0.2 * std::sin(tilt_x), -0.2 * std::cos(tilt_x),
                          0.2 * std::sin(tilt_z)};
    frame.positions[2] = frame.positions[1] + Vec3{0.0, -0.25, 0.0};
    frame.positions[3] =
        frame.positions[2] +
        Vec3{0.04 * std::sin(phase + 1.0), -0.15, 0.03 * std::cos(phase)};
    frame.positions[4] = frame.positions[2] + Vec3{0.15, 0.0, 0.0};
    frame.positions[7] = frame.positions[2] + Vec3{-0.15, 0.0, 0.0};

    const double psi_r = 1.0 + 0.6 * std::sin(kTau * i / 15.0);
    const double fz_r = 0.05 + 0.02 * std::sin(phase);
    const double chi_r = kPi / 2.0 + 0.5 * std::sin(kTau * i / 6.0 + 0.5);
    place_arm(frame, 4, 5, 6, +1.0, psi_r, fz_r, chi_r);

    const double psi_l = 0.15 + 0.1 * std::sin(phase + 2.0);
    const double fz_l = 0.03;
    const double chi_l = kPi - 0.2 - 0.15 * std::sin(phase + 0.7);
    place_arm(frame, 7, 8, 9, -1.0, psi_l, fz_l, chi_l);

    frames.push_back(std::move(frame));
  }
  return PoseSequence(Skeleton::canonical(), 15.0, std::move(frames));
}

PoseSequence upright_sequence() {
  return PoseSequence(Skeleton::canonical(), 15.0, {rest_frame(), rest_frame()});
}

PoseSequence bend_right_elbow_sequence() {
  PoseFrame frame = rest_frame();
  // Forearm swung so the elbow interior angle is 2*pi/3 (RElbowRoll pi/3).
  const double theta = kPi / 3.0;
  frame.positions[6] =
      frame.positions[5] + Vec3{std::sin(theta), std::cos(theta), 0.0} * 0.25;
  return PoseSequence(Skeleton::canonical(), 15.0, {frame});
}

PoseSequence degenerate_mid_sequence() {
  PoseFrame collapsed = rest_frame();
  collapsed.positions[1] = collapsed.positions[0];  // spine onto hip
  return PoseSequence(Skeleton::canonical(), 15.0,
                      {rest_frame(), collapsed, rest_frame()});
}

// Two-frame clip whose motion variance is exactly `variance`: one joint
// coordinate stepping by sqrt(120 * variance) contributes
// (a^2 / 4) / 30 = variance.
PoseSequence cluster_sequence(double variance) {
  PoseFrame moved = rest_frame();
  moved.positions[0].x += std::sqrt(120.0 * variance);
  return PoseSequence(Skeleton::canonical(), 15.0, {rest_frame(), moved});
}

void write(const fs::path& path, const std::string& content) {
  write_text_file(path, content);
  std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out_dir = argc > 1 ? argv[1] : "fixtures";
  fs::create_directories(out_dir);
  fs::create_directories(out_dir / "synthetic_clusters");

  const KinematicConfig config = pepper_like_config();
  write(out_dir / "pepper_like.config.json", serialize_config(config));
  write(out_dir / "upright.pose.json", serialize_pose(upright_sequence()));
  write(out_dir / "bend_right_elbow.pose.json",
        serialize_pose(bend_right_elbow_sequence()));
  write(out_dir / "degenerate_mid.pose.json",
        serialize_pose(degenerate_mid_sequence()));

  write(out_dir / "wave.pose.json", serialize_pose(wave_sequence()));
  // The golden corresponds to the file as shipped, i.e. after canonical
  // quantization, so read it back before retargeting.
  const PoseSequence wave = read_pose_file(out_dir / "wave.pose.json");
  write(out_dir / "wave.golden.traj.json",
        serialize_trajectory(
            retarget_sequence(wave, config, DegeneratePolicy::fail)));

  const double targets[9] = {0.09, 0.10, 0.11, 0.49, 0.50,
                             0.51, 0.89, 0.90, 0.91};
  for (int i = 0; i < 9; ++i) {
    const std::string name = "s0" + std::to_string(i + 1) + ".pose.json";
    write(out_dir / "synthetic_clusters" / name,
          serialize_pose(cluster_sequence(targets[i])));
  }
  return 0;
}
