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

#ifndef ROBOGEST_ERRORS_HPP_
#define ROBOGEST_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace robogest {

// Base for all library errors. Every error carries a stable machine-readable
// code next to the human-readable message, so callers can branch without
// string-matching prose.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Malformed input document (not valid JSON at all). Carries byte offset
// context in the message when available.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid document that violates a schema rule. The code is one of
// the enumerated schema codes (joint_arity, fps_nonpositive, ...).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A bone whose projection onto the measurement plane is zero (or a
// zero-length segment); the direction angle is undefined.
class DegenerateBoneError : public Error {
 public:
  explicit DegenerateBoneError(const std::string& message, std::string joint = "")
      : Error("degenerate_bone", message), joint_(std::move(joint)) {}

  // Robot joint being evaluated when the degeneracy was hit; empty when the
  // low-level angle routine was called directly.
  const std::string& joint() const noexcept { return joint_; }

 private:
  std::string joint_;
};

// Trajectory or rule references a joint the config does not define.
class UnknownJointError : public Error {
 public:
  explicit UnknownJointError(const std::string& message)
      : Error("unknown_joint", message) {}
};

// Feature vectors (or Gaussian fits) of inconsistent dimension.
class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& message)
      : Error("dimension_mismatch", message) {}
};

// Fewer samples than a statistical fit requires.
class InsufficientSamplesError : public Error {
 public:
  explicit InsufficientSamplesError(const std::string& message)
      : Error("insufficient_samples", message) {}
};

// Covariance with an eigenvalue below the negativity tolerance.
class NonPsdError : public Error {
 public:
  explicit NonPsdError(const std::string& message)
      : Error("non_psd", message) {}
};

// Style selection over fewer than three items.
class TooFewItemsError : public Error {
 public:
  explicit TooFewItemsError(const std::string& message)
      : Error("too_few_items", message) {}
};

// Filesystem-level failure (missing file, unwritable path).
class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error("io_error", message) {}
};

}  // namespace robogest

#endif  // ROBOGEST_ERRORS_HPP_
