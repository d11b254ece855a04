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

#ifndef ROBOGEST_TESTS_ORACLES_HPP_
#define ROBOGEST_TESTS_ORACLES_HPP_

// Reference implementations the tests check the library against. Everything
// here deliberately avoids the library's own code paths (and Eigen): scalar
// long-double math and a hand-rolled cyclic Jacobi eigensolver.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<long double>>;
using Vec = std::vector<long double>;

inline constexpr long double kPi = 3.14159265358979323846264338327950288L;

// The angle recentering, as a plain branch transcription.
inline long double shift(long double raw) {
  return raw < 0.0L ? raw + kPi : raw - kPi;
}

inline long double shifted_scaled(long double raw, long double sign,
                                  long double scale) {
  return sign * scale * shift(raw);
}

// Wrap into (-pi, pi].
inline long double wrap_pi(long double x) {
  while (x <= -kPi) x += 2.0L * kPi;
  while (x > kPi) x -= 2.0L * kPi;
  return x;
}

inline long double direction_angle(long double num, long double den) {
  return atan2l(num, den);
}

// Interior angle at vertex b via the plain dot-product formula.
inline long double interior(const long double a[3], const long double b[3],
                            const long double c[3]) {
  long double u[3] = {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  long double v[3] = {c[0] - b[0], c[1] - b[1], c[2] - b[2]};
  long double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  long double nu = sqrtl(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  long double nv = sqrtl(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  long double cosine = dot / (nu * nv);
  if (cosine > 1.0L) cosine = 1.0L;
  if (cosine < -1.0L) cosine = -1.0L;
  return acosl(cosine);
}

inline Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0L;
  return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat out(n, Vec(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

struct EigResult {
  Vec values;
  Mat vectors;  // columns are eigenvectors
};

// Cyclic Jacobi eigendecomposition for symmetric matrices.
inline EigResult jacobi_eig(Mat a) {
  const std::size_t n = a.size();
  Mat v = identity(n);
  for (int sweep = 0; sweep < 200; ++sweep) {
    long double off = 0.0L;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-36L) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (fabsl(a[p][q]) < 1e-30L) continue;
        const long double theta = (a[q][q] - a[p][p]) / (2.0L * a[p][q]);
        const long double t =
            (theta >= 0.0L ? 1.0L : -1.0L) /
            (fabsl(theta) + sqrtl(theta * theta + 1.0L));
        const long double c = 1.0L / sqrtl(t * t + 1.0L);
        const long double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const long double akp = a[k][p];
          const long double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double apk = a[p][k];
          const long double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double vkp = v[k][p];
          const long double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  EigResult result;
  result.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.values[i] = a[i][i];
  result.vectors = std::move(v);
  return result;
}

// V f(D) V^T for a symmetric matrix given its eigendecomposition.
inline Mat reconstruct_sqrt(const EigResult& eig) {
  const std::size_t n = eig.values.size();
  Mat out(n, Vec(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const long double lambda = eig.values[k] > 0.0L ? eig.values[k] : 0.0L;
        out[i][j] += eig.vectors[i][k] * sqrtl(lambda) * eig.vectors[j][k];
      }
    }
  }
  return out;
}

// Squared Gaussian Fréchet distance computed entirely through the Jacobi
// path in long double.
inline long double frechet_ref(const Vec& mean1, const Mat& cov1,
                               const Vec& mean2, const Mat& cov2) {
  const std::size_t n = mean1.size();
  const Mat sqrt1 = reconstruct_sqrt(jacobi_eig(cov1));
  Mat inner = matmul(matmul(sqrt1, cov2), sqrt1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const long double avg = 0.5L * (inner[i][j] + inner[j][i]);
      inner[i][j] = avg;
      inner[j][i] = avg;
    }
  }
  const EigResult eig = jacobi_eig(inner);
  long double trace_term = 0.0L;
  for (const long double lambda : eig.values) {
    trace_term += sqrtl(lambda > 0.0L ? lambda : 0.0L);
  }
  long double mean_term = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double d = mean1[i] - mean2[i];
    mean_term += d * d;
  }
  long double trace1 = 0.0L, trace2 = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    trace1 += cov1[i][i];
    trace2 += cov2[i][i];
  }
  return mean_term + trace1 + trace2 - 2.0L * trace_term;
}

// Orthogonal matrix as a product of Givens rotations with the given angles;
// callers feed random angles for invariance tests.
inline Mat givens_product(std::size_t n, const std::vector<double>& angles) {
  Mat q = identity(n);
  std::size_t idx = 0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r = p + 1; r < n; ++r) {
      const long double angle =
          angles[idx++ % angles.size()] + 0.1L * static_cast<long double>(idx);
      const long double c = cosl(angle);
      const long double s = sinl(angle);
      for (std::size_t k = 0; k < n; ++k) {
        const long double qkp = q[k][p];
        const long double qkr = q[k][r];
        q[k][p] = c * qkp - s * qkr;
        q[k][r] = s * qkp + c * qkr;
      }
    }
  }
  return q;
}

}  // namespace oracle

#endif  // ROBOGEST_TESTS_ORACLES_HPP_
