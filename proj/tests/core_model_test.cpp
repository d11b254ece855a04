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

#include "robogest/core.hpp"

#include <catch2/catch.hpp>

#include "robogest/formats.hpp"
#include "test_util.hpp"

using namespace robogest;

namespace {

KinematicConfig shipped_config() {
  return read_config(testutil::fixtures_dir() / "pepper_like.config.json");
}

bool has_violation(const std::vector<Violation>& violations,
                   const std::string& code) {
  for (const auto& v : violations) {
    if (v.code == code) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("skeleton enforces joint count and uniqueness") {
  CHECK_NOTHROW(Skeleton::canonical());
  CHECK_THROWS_AS(Skeleton({"a", "b"}), SchemaError);
  auto names = Skeleton::canonical().joint_names();
  names[9] = names[0];
  CHECK_THROWS_AS(Skeleton(names), SchemaError);
}

TEST_CASE("pose sequence rejects bad construction") {
  const Skeleton skeleton = Skeleton::canonical();
  PoseFrame frame;
  frame.positions.assign(10, Vec3{});

  SECTION("wrong arity is rejected at construction") {
    PoseFrame short_frame;
    short_frame.positions.assign(9, Vec3{});
    CHECK_THROWS_AS(PoseSequence(skeleton, 15.0, {short_frame}), SchemaError);
  }
  SECTION("non-positive fps") {
    CHECK_THROWS_AS(PoseSequence(skeleton, 0.0, {frame}), SchemaError);
    CHECK_THROWS_AS(PoseSequence(skeleton, -1.0, {frame}), SchemaError);
  }
  SECTION("no frames") {
    CHECK_THROWS_AS(PoseSequence(skeleton, 15.0, {}), SchemaError);
  }
  SECTION("non-finite coordinate") {
    PoseFrame bad = frame;
    bad.positions[3].y = std::nan("");
    CHECK_THROWS_AS(PoseSequence(skeleton, 15.0, {bad}), SchemaError);
  }
  SECTION("valid sequence constructs") {
    const PoseSequence seq(skeleton, 15.0, {frame, frame});
    CHECK(seq.frame_count() == 2);
    CHECK(seq.fps() == 15.0);
  }
}

TEST_CASE("validate_config accepts the shipped fixture") {
  CHECK(validate_config(shipped_config()).empty());
}

TEST_CASE("validate_config reports degenerate limits") {
  KinematicConfig config = shipped_config();
  config.joints[0].angle_min = config.joints[0].angle_max;
  const auto violations = validate_config(config);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].code == "limits_degenerate");
}

TEST_CASE("validate_config reports unknown joint references") {
  KinematicConfig config = shipped_config();
  config.joints[0].rule.child_joint = "wrist_r";  // not a skeleton joint
  CHECK(has_violation(validate_config(config), "unknown_joint"));
}

TEST_CASE("validate_config covers the remaining invariants") {
  SECTION("vel_max must be positive") {
    KinematicConfig config = shipped_config();
    config.joints[2].vel_max = 0.0;
    CHECK(has_violation(validate_config(config), "vel_max_nonpositive"));
  }
  SECTION("duplicate robot joint names") {
    KinematicConfig config = shipped_config();
    config.joints[1].name = config.joints[0].name;
    CHECK(has_violation(validate_config(config), "duplicate_joint"));
  }
  SECTION("direction pair needs distinct axes") {
    KinematicConfig config = shipped_config();
    config.joints[0].rule.denominator_axis = Axis::x;
    CHECK(has_violation(validate_config(config), "axis_conflict"));
  }
  SECTION("interior angle needs its third joint") {
    KinematicConfig config = shipped_config();
    auto& elbow = config.joints[6];
    REQUIRE(elbow.rule.kind == RuleKind::interior_angle);
    elbow.rule.third_joint.reset();
    CHECK(has_violation(validate_config(config), "third_joint_missing"));
  }
  SECTION("third joint is rejected elsewhere") {
    KinematicConfig config = shipped_config();
    config.joints[0].rule.third_joint = "neck";
    CHECK(has_violation(validate_config(config), "third_joint_unexpected"));
  }
  SECTION("scale must be positive on non-constant rules") {
    KinematicConfig config = shipped_config();
    config.joints[0].rule.scale = 0.0;
    CHECK(has_violation(validate_config(config), "scale_nonpositive"));
  }
  SECTION("sign must be +1 or -1") {
    KinematicConfig config = shipped_config();
    config.joints[0].rule.sign = 0.5;
    CHECK(has_violation(validate_config(config), "sign_invalid"));
  }
}

TEST_CASE("parsing any shipped fixture then re-validating is clean") {
  // Config fixture: no violations by construction.
  CHECK(validate_config(shipped_config()).empty());
  // Pose fixtures: constructible (their invariants throw on violation).
  for (const char* name :
       {"upright.pose.json", "bend_right_elbow.pose.json",
        "degenerate_mid.pose.json", "wave.pose.json"}) {
    CHECK_NOTHROW(read_pose_file(testutil::fixtures_dir() / name));
  }
}
