// Copyright 2026 The dpmst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dpmst {

struct LogDet {
  double log_abs;  // log|det A|, -inf when singular
  int sign;        // -1, 0 or +1
};

// log|det| of a dense row-major k x k matrix by LU with partial pivoting.
// The matrix is overwritten with its factors.
inline LogDet log_determinant(std::span<double> a, std::size_t k) {
  if (k == 0) return {0.0, 1};
  int sign = 1;
  double log_abs = 0.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    double best = std::abs(a[col * k + col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double v = std::abs(a[r * k + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0 || !std::isfinite(best)) return {-INFINITY, 0};
    if (piv != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(a[col * k + c], a[piv * k + c]);
      sign = -sign;
    }
    const double d = a[col * k + col];
    if (d < 0) sign = -sign;
    log_abs += std::log(std::abs(d));
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = a[r * k + col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col + 1; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
    }
  }
  return {log_abs, sign};
}

// In-place inverse of a symmetric positive definite row-major k x k matrix
// via Cholesky. Returns false, leaving `a` unspecified, when a pivot is not
// positive and finite.
inline bool spd_inverse(std::span<double> a, std::size_t k) {
  // Lower factor L with A = L L^T, stored in the lower triangle.
  for (std::size_t j = 0; j < k; ++j) {
    double d = a[j * k + j];
    for (std::size_t p = 0; p < j; ++p) d -= a[j * k + p] * a[j * k + p];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    d = std::sqrt(d);
    a[j * k + j] = d;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a[i * k + j];
      for (std::size_t p = 0; p < j; ++p) s -= a[i * k + p] * a[j * k + p];
      a[i * k + j] = s / d;
    }
  }
  // Invert L in place (lower triangle).
  for (std::size_t j = 0; j < k; ++j) {
    a[j * k + j] = 1.0 / a[j * k + j];
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = 0.0;
      for (std::size_t p = j; p < i; ++p) s -= a[i * k + p] * a[p * k + j];
      a[i * k + j] = s / a[i * k + i];
    }
  }
  // A^-1 = L^-T L^-1; fill the upper triangle first, then mirror.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      for (std::size_t p = j; p < k; ++p) s += a[p * k + i] * a[p * k + j];
      a[i * k + j] = s;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) a[i * k + j] = a[j * k + i];
  }
  for (double x : a.first(k * k)) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Exact determinant of an integer matrix by fraction-free (Bareiss)
// elimination. Every intermediate value is a minor of the input, so the
// caller must ensure those fit in 64 bits (Hadamard's bound); products are
// formed in 128 bits before the exact division.
inline std::optional<std::int64_t> exact_determinant(std::vector<std::int64_t> a, std::size_t k) {
  using Wide = __int128;
  if (k == 0) return 1;
  int sign = 1;
  std::int64_t prev = 1;
  for (std::size_t col = 0; col + 1 < k; ++col) {
    if (a[col * k + col] == 0) {
      std::size_t r = col + 1;
      while (r < k && a[r * k + col] == 0) ++r;
      if (r == k) return 0;
      for (std::size_t c = 0; c < k; ++c) std::swap(a[col * k + c], a[r * k + c]);
      sign = -sign;
    }
    const std::int64_t p = a[col * k + col];
    for (std::size_t r = col + 1; r < k; ++r) {
      for (std::size_t c = col + 1; c < k; ++c) {
        const Wide num = Wide{a[r * k + c]} * p - Wide{a[r * k + col]} * a[col * k + c];
        const Wide q = num / prev;
        if (q > Wide{INT64_MAX} || q < Wide{INT64_MIN}) return std::nullopt;
        a[r * k + c] = static_cast<std::int64_t>(q);
      }
      a[r * k + col] = 0;
    }
    prev = p;
  }
  return sign * a[k * k - 1];
}

}  // namespace dpmst
