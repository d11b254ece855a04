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

#include "robogest/limiter.hpp"

#include <cmath>
#include <cstring>
#include <random>

#include <catch2/catch.hpp>

#include "robogest/formats.hpp"
#include "robogest/retarget.hpp"
#include "test_util.hpp"

using namespace robogest;

namespace {

// 1.0 * (1/15) + 0, the worked velocity-adjustment step.
constexpr double kStep = 0.066666666666666666;

KinematicConfig single_joint_config(double vel_max, double angle_min = -10.0,
                                    double angle_max = 10.0) {
  KinematicConfig config{Skeleton::canonical(), {}};
  JointSpec spec;
  spec.name = "J";
  spec.rule.kind = RuleKind::constant;
  spec.angle_min = angle_min;
  spec.angle_max = angle_max;
  spec.vel_max = vel_max;
  config.joints.push_back(spec);
  return config;
}

JointTrajectory single_joint_traj(std::vector<double> samples,
                                  double fps = 15.0) {
  JointTrajectory traj;
  traj.fps = fps;
  traj.joint_names = {"J"};
  for (const double s : samples) traj.samples.push_back({s});
  return traj;
}

std::vector<double> column(const JointTrajectory& traj, std::size_t j = 0) {
  std::vector<double> out;
  for (const auto& row : traj.samples) out.push_back(row[j]);
  return out;
}

bool bit_identical(const JointTrajectory& a, const JointTrajectory& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t f = 0; f < a.samples.size(); ++f) {
    if (std::memcmp(a.samples[f].data(), b.samples[f].data(),
                    a.samples[f].size() * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("limit_velocity worked cases") {
  SECTION("ascending step beyond the limit is chopped to vel_max * t") {
    const auto out =
        limit_velocity(single_joint_traj({0.0, 0.5}), single_joint_config(1.0));
    CHECK(column(out) == std::vector<double>{0.0, kStep});
    CHECK(out.samples[1][0] == Approx(0.06667).margin(5e-6));
  }
  SECTION("step within the limit is untouched") {
    const auto traj = single_joint_traj({0.2, 0.21});
    const auto out = limit_velocity(traj, single_joint_config(2.0));
    CHECK(bit_identical(out, traj));
  }
  SECTION("descending branch mirrors with a negative step") {
    const auto out = limit_velocity(single_joint_traj({0.0, -0.5}),
                                    single_joint_config(1.0));
    CHECK(column(out) == std::vector<double>{0.0, -kStep});
  }
  SECTION("adjustment propagates through the already-adjusted sample") {
    const auto out = limit_velocity(single_joint_traj({0.0, 0.5, 0.5}),
                                    single_joint_config(1.0));
    REQUIRE(out.samples.size() == 3);
    CHECK(out.samples[1][0] == kStep);
    CHECK(out.samples[2][0] == kStep + kStep);
    CHECK(out.samples[2][0] == Approx(0.13333).margin(5e-6));
  }
  SECTION("equal consecutive samples stay put") {
    const auto traj = single_joint_traj({0.3, 0.3, 0.3});
    CHECK(bit_identical(limit_velocity(traj, single_joint_config(0.5)), traj));
  }
  SECTION("first sample is never modified") {
    const auto out = limit_velocity(single_joint_traj({5.0, 5.0}),
                                    single_joint_config(0.1));
    CHECK(out.samples[0][0] == 5.0);
  }
}

TEST_CASE("clamp_limits worked cases") {
  SECTION("overshoot lands on the boundary") {
    const auto out = clamp_limits(single_joint_traj({0.9}),
                                  single_joint_config(1.0, -0.5, 0.5));
    CHECK(out.samples[0][0] == 0.5);
  }
  SECTION("inside the limits is the identity") {
    const auto traj = single_joint_traj({0.0, 0.0, 0.0});
    CHECK(bit_identical(
        clamp_limits(traj, single_joint_config(1.0, -0.5, 0.5)), traj));
  }
  SECTION("golden wave under tightened limits matches the min/max oracle") {
    const auto fixtures = testutil::fixtures_dir();
    auto config = read_config(fixtures / "pepper_like.config.json");
    for (auto& joint : config.joints) {
      joint.angle_min = -0.25;
      joint.angle_max = 0.2;
    }
    const auto traj = read_trajectory(fixtures / "wave.golden.traj.json");
    const auto clamped = clamp_limits(traj, config);
    for (std::size_t f = 0; f < traj.samples.size(); ++f) {
      for (std::size_t j = 0; j < traj.joint_names.size(); ++j) {
        const double expected =
            std::min(std::max(traj.samples[f][j], -0.25), 0.2);
        REQUIRE(clamped.samples[f][j] == expected);
      }
    }
  }
}

TEST_CASE("unknown trajectory joints are rejected") {
  auto traj = single_joint_traj({0.0, 0.1});
  traj.joint_names = {"Bogus"};
  const auto config = single_joint_config(1.0);
  CHECK_THROWS_AS(clamp_limits(traj, config), UnknownJointError);
  CHECK_THROWS_AS(limit_velocity(traj, config), UnknownJointError);
  CHECK_THROWS_AS(validate_trajectory(traj, config), UnknownJointError);
}

TEST_CASE("validate_trajectory worked cases") {
  SECTION("raw fast step reports 7.5 rad/s and infeasible") {
    const auto report = validate_trajectory(single_joint_traj({0.0, 0.5}),
                                            single_joint_config(1.0));
    CHECK(report.per_joint_max_velocity.at("J") == Approx(7.5).margin(1e-12));
    CHECK(!report.feasible);
  }
  SECTION("single-frame trajectory is trivially feasible") {
    const auto report = validate_trajectory(single_joint_traj({0.2}),
                                            single_joint_config(1.0));
    CHECK(report.feasible);
    CHECK(report.per_joint_max_velocity.at("J") == 0.0);
    CHECK(report.per_joint_limit_hits.at("J") == 0);
  }
  SECTION("limit hits are counted") {
    const auto report = validate_trajectory(
        single_joint_traj({0.0, 0.6, 0.7}),
        single_joint_config(100.0, -0.5, 0.5));
    CHECK(report.per_joint_limit_hits.at("J") == 2);
    CHECK(!report.feasible);
  }
  SECTION("enforcement composition is always feasible on the wave fixture") {
    const auto fixtures = testutil::fixtures_dir();
    const auto config = read_config(fixtures / "pepper_like.config.json");
    const auto wave = read_pose_file(fixtures / "wave.pose.json");
    const auto traj = retarget_sequence(wave, config);
    const auto enforced = clamp_limits(limit_velocity(traj, config), config);
    CHECK(validate_trajectory(enforced, config).feasible);
  }
}

TEST_CASE("limiter properties on random trajectories") {
  std::mt19937 rng(97);
  std::uniform_int_distribution<int> frame_count(5, 100);
  std::uniform_int_distribution<int> joint_count(1, 6);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> vel(0.5, 6.0);

  for (int trial = 0; trial < 1000; ++trial) {
    const int joints = joint_count(rng);
    KinematicConfig config{Skeleton::canonical(), {}};
    JointTrajectory traj;
    traj.fps = 15.0;
    for (int j = 0; j < joints; ++j) {
      JointSpec spec;
      spec.name = "J" + std::to_string(j);
      spec.rule.kind = RuleKind::constant;
      spec.angle_min = -kPi;
      spec.angle_max = kPi;
      spec.vel_max = vel(rng);
      config.joints.push_back(spec);
      traj.joint_names.push_back(spec.name);
    }
    const int frames = frame_count(rng);
    traj.samples.resize(frames);
    for (auto& row : traj.samples) {
      for (int j = 0; j < joints; ++j) row.push_back(angle(rng));
    }

    const auto limited = limit_velocity(traj, config);

    // Every per-step speed within vel_max.
    for (int j = 0; j < joints; ++j) {
      for (std::size_t f = 1; f < limited.samples.size(); ++f) {
        const double speed =
            std::abs(limited.samples[f][j] - limited.samples[f - 1][j]) * 15.0;
        REQUIRE(speed <= config.joints[j].vel_max + kVelocityTolerance);
      }
    }

    // Exact idempotence.
    REQUIRE(bit_identical(limit_velocity(limited, config), limited));

    // Identity on already-feasible input.
    const auto again = limit_velocity(limited, config);
    REQUIRE(bit_identical(again, limited));

    // Clamping after limiting keeps the result feasible (clamping is
    // 1-Lipschitz, so it cannot reintroduce speed violations).
    const auto enforced = clamp_limits(limited, config);
    REQUIRE(validate_trajectory(enforced, config).feasible);

    // clamp_limits idempotence.
    REQUIRE(bit_identical(clamp_limits(enforced, config), enforced));
  }
}

TEST_CASE("monotone raw targets stay monotone after limiting") {
  std::mt19937 rng(131);
  std::uniform_real_distribution<double> step(0.0, 0.8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> samples{0.0};
    for (int i = 0; i < 40; ++i) samples.push_back(samples.back() + step(rng));
    const auto out =
        limit_velocity(single_joint_traj(samples), single_joint_config(2.0));
    for (std::size_t f = 1; f < out.samples.size(); ++f) {
      REQUIRE(out.samples[f][0] >= out.samples[f - 1][0]);
    }
  }
}
