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

#ifndef ROBOGEST_METRICS_HPP_
#define ROBOGEST_METRICS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "robogest/core.hpp"
#include "robogest/errors.hpp"

// Gesture-set statistics: motion variance, Gaussian Fréchet distance, and
// variance-percentile style selection. Variance and covariance are population
// (divide by N) throughout, for determinism on tiny inputs.

namespace robogest {

// Eigenvalues above this negative floor are treated as rounding noise and
// clipped to zero; anything below it makes a covariance non-PSD.
inline constexpr double kEigenvalueClip = -1e-9;

// A Gaussian fitted to a feature set. Covariance is kept symmetric
// ((C + C^T) / 2 at fit time).
struct GaussianFit {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  std::size_t sample_count = 0;
};

enum class FeatureKind { flat_positions, per_frame_joint_speeds };

// Which feature space the set-level distance runs in. flat_positions turns
// each frame into one 3J-vector of coordinates; per_frame_joint_speeds into
// one J-vector of per-joint displacement magnitudes times fps (translation
// invariant).
struct FeatureSpec {
  FeatureKind kind = FeatureKind::flat_positions;
};

// Mean temporal variance of a clip: population variance over time of each of
// the 3J coordinate series, averaged across series. Zero iff the motion is
// constant; scales quadratically with the pose and ignores constant offsets.
// Each series is shifted by its first sample before accumulating, which makes
// the constant case exactly zero.
inline double motion_variance(const PoseSequence& seq) {
  const std::size_t joints = seq.skeleton().size();
  const std::size_t n = seq.frame_count();
  const double inv_n = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t j = 0; j < joints; ++j) {
    for (int coord = 0; coord < 3; ++coord) {
      const Axis axis = static_cast<Axis>(coord);
      const double base = component(seq.frames()[0].positions[j], axis);
      double mean = 0.0;
      for (const auto& frame : seq.frames()) {
        mean += component(frame.positions[j], axis) - base;
      }
      mean *= inv_n;
      double var = 0.0;
      for (const auto& frame : seq.frames()) {
        const double d = component(frame.positions[j], axis) - base - mean;
        var += d * d;
      }
      total += var * inv_n;
    }
  }
  return total / static_cast<double>(joints * 3);
}

// Per-sequence feature vectors for the given spec. per_frame_joint_speeds
// yields frame_count - 1 vectors (none for a single-frame clip).
inline std::vector<Eigen::VectorXd> extract_features(const PoseSequence& seq,
                                                     FeatureSpec spec = {}) {
  const std::size_t joints = seq.skeleton().size();
  std::vector<Eigen::VectorXd> features;
  switch (spec.kind) {
    case FeatureKind::flat_positions:
      features.reserve(seq.frame_count());
      for (const auto& frame : seq.frames()) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(joints * 3));
        for (std::size_t j = 0; j < joints; ++j) {
          v[3 * j + 0] = frame.positions[j].x;
          v[3 * j + 1] = frame.positions[j].y;
          v[3 * j + 2] = frame.positions[j].z;
        }
        features.push_back(std::move(v));
      }
      break;
    case FeatureKind::per_frame_joint_speeds:
      if (seq.frame_count() < 2) return features;
      features.reserve(seq.frame_count() - 1);
      for (std::size_t f = 1; f < seq.frame_count(); ++f) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(joints));
        for (std::size_t j = 0; j < joints; ++j) {
          v[j] = (seq.frames()[f].positions[j] - seq.frames()[f - 1].positions[j])
                     .norm() *
                 seq.fps();
        }
        features.push_back(std::move(v));
      }
      break;
  }
  return features;
}

// Sample mean and population covariance of the feature vectors, covariance
// symmetrized. Needs at least two samples of one consistent dimension.
inline GaussianFit fit_gaussian(const std::vector<Eigen::VectorXd>& samples) {
  if (samples.size() < 2) {
    throw InsufficientSamplesError(
        "gaussian fit needs at least 2 samples, got " +
        std::to_string(samples.size()));
  }
  const Eigen::Index dim = samples.front().size();
  for (const auto& s : samples) {
    if (s.size() != dim) {
      throw DimensionMismatchError(
          "feature vectors have inconsistent dimensions (" +
          std::to_string(dim) + " vs " + std::to_string(s.size()) + ")");
    }
  }
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  GaussianFit fit;
  fit.sample_count = samples.size();
  fit.mean = Eigen::VectorXd::Zero(dim);
  for (const auto& s : samples) fit.mean += s;
  fit.mean *= inv_n;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& s : samples) {
    const Eigen::VectorXd d = s - fit.mean;
    cov += d * d.transpose();
  }
  cov *= inv_n;
  fit.covariance = 0.5 * (cov + cov.transpose());
  return fit;
}

namespace detail {

// Eigendecomposition with the negativity check and noise clip applied.
inline void psd_eigs(const Eigen::MatrixXd& sym, Eigen::MatrixXd& vectors,
                     Eigen::VectorXd& values, bool reject_negative) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  values = solver.eigenvalues();
  vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) {
      if (reject_negative && values[i] < kEigenvalueClip) {
        throw NonPsdError("covariance eigenvalue " + std::to_string(values[i]) +
                          " below tolerance");
      }
      values[i] = 0.0;
    }
  }
}

}  // namespace detail

// Squared Fréchet (Wasserstein-2) distance between two Gaussians:
//   |mu1 - mu2|^2 + Tr(S1) + Tr(S2) - 2 Tr((S1^1/2 S2 S1^1/2)^1/2).
// Covariances are symmetrized before use; eigenvalues in [-1e-9, 0) are
// clipped to zero, anything lower raises NonPsdError. Result clipped to >= 0.
inline double frechet_distance(const GaussianFit& g1, const GaussianFit& g2) {
  if (g1.mean.size() != g2.mean.size()) {
    throw DimensionMismatchError("gaussian dimensions differ (" +
                                 std::to_string(g1.mean.size()) + " vs " +
                                 std::to_string(g2.mean.size()) + ")");
  }
  const Eigen::MatrixXd s1 =
      0.5 * (g1.covariance + g1.covariance.transpose());
  const Eigen::MatrixXd s2 =
      0.5 * (g2.covariance + g2.covariance.transpose());

  Eigen::MatrixXd v1, v2;
  Eigen::VectorXd e1, e2;
  detail::psd_eigs(s1, v1, e1, /*reject_negative=*/true);
  detail::psd_eigs(s2, v2, e2, /*reject_negative=*/true);

  const Eigen::MatrixXd sqrt_s1 =
      v1 * e1.cwiseSqrt().asDiagonal() * v1.transpose();
  Eigen::MatrixXd inner = sqrt_s1 * s2 * sqrt_s1;
  inner = 0.5 * (inner + inner.transpose());

  // Eigenvalues of the inner product matrix are PSD up to rounding; negatives
  // here are pure noise, never an input error. The square root amplifies
  // noise near zero (sqrt(1e-16) = 1e-8), so values below a relative floor
  // are dropped before the root; without this, nearly singular fits (few
  // samples in many dimensions) never reach an exact zero self-distance.
  Eigen::MatrixXd vi;
  Eigen::VectorXd ei;
  detail::psd_eigs(inner, vi, ei, /*reject_negative=*/false);
  const double floor = ei.size() > 0 ? 1e-12 * ei.maxCoeff() : 0.0;

  double trace_term = 0.0;
  for (Eigen::Index i = 0; i < ei.size(); ++i) {
    if (ei[i] > floor) trace_term += std::sqrt(ei[i]);
  }
  const double mean_term = (g1.mean - g2.mean).squaredNorm();
  const double d2 = mean_term + e1.sum() + e2.sum() - 2.0 * trace_term;
  return std::max(0.0, d2);
}

// Squared Fréchet distance between two gesture sets: pools each set's
// feature vectors, fits one Gaussian per set, and compares them.
inline double fgd_between_sets(const std::vector<PoseSequence>& set_a,
                               const std::vector<PoseSequence>& set_b,
                               FeatureSpec spec = {}) {
  auto pool = [&spec](const std::vector<PoseSequence>& set) {
    std::vector<Eigen::VectorXd> features;
    for (const auto& seq : set) {
      auto f = extract_features(seq, spec);
      features.insert(features.end(), f.begin(), f.end());
    }
    return features;
  };
  return frechet_distance(fit_gaussian(pool(set_a)), fit_gaussian(pool(set_b)));
}

// The three selected style representatives, lowest variance first.
struct StyleSelection {
  std::string introvert;
  std::string normal;
  std::string extrovert;
};

namespace detail {

// Linear-interpolated empirical percentile of sorted values.
inline double percentile(const std::vector<double>& sorted, double p) {
  const double rank =
      (p / 100.0) * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

// Picks the item nearest each requested variance percentile (low, mid, high;
// defaults 10/50/90) as introvert, normal, and extrovert representatives.
// Distance ties break toward the lexicographically smallest id; the three ids
// are kept distinct by substituting the next-nearest candidate, filling in
// low, mid, high order. Deterministic and independent of input order.
inline StyleSelection select_style_ids(
    const std::map<std::string, double>& variances,
    std::array<double, 3> percentiles = {10.0, 50.0, 90.0}) {
  if (variances.size() < 3) {
    throw TooFewItemsError("style selection needs at least 3 items, got " +
                           std::to_string(variances.size()));
  }
  for (const double p : percentiles) {
    if (!(p >= 0.0 && p <= 100.0)) {
      throw Error("percentile_range",
                  "percentiles must lie in [0, 100], got " +
                      std::to_string(p));
    }
  }
  std::vector<double> sorted;
  sorted.reserve(variances.size());
  for (const auto& [id, var] : variances) {
    if (!std::isfinite(var)) {
      throw Error("nonfinite_value", "variance of '" + id + "' is not finite");
    }
    sorted.push_back(var);
  }
  std::sort(sorted.begin(), sorted.end());

  std::array<std::string, 3> picked;
  std::set<std::string> taken;
  for (std::size_t k = 0; k < 3; ++k) {
    const double target = detail::percentile(sorted, percentiles[k]);
    const std::string* best = nullptr;
    double best_distance = 0.0;
    for (const auto& [id, var] : variances) {
      if (taken.count(id)) continue;
      const double distance = std::abs(var - target);
      // Map iteration is id-ascending, so strict < keeps the smallest id
      // among equal distances.
      if (best == nullptr || distance < best_distance) {
        best = &id;
        best_distance = distance;
      }
    }
    picked[k] = *best;
    taken.insert(picked[k]);
  }
  return {picked[0], picked[1], picked[2]};
}

}  // namespace robogest

#endif  // ROBOGEST_METRICS_HPP_
