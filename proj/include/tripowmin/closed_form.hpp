// Copyright 2026 The tripowmin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIPOWMIN_CLOSED_FORM_HPP_
#define TRIPOWMIN_CLOSED_FORM_HPP_

// Closed-form minimizer of F(x,y) = d1^n + d2^n + d3^n over the closed
// triangle, plus the vertex values, the n = 1 altitude rule and the n -> oo
// limit (the incenter).

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "tripowmin/error.hpp"
#include "tripowmin/geometry.hpp"

namespace tripowmin {

inline void require_exponent_above_one(double n) {
  if (!(n > 1.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kInvalidExponent,
                "exponent must be a finite real > 1, got " + std::to_string(n));
  }
}

inline void require_exponent_at_least_one(double n) {
  if (!(n >= 1.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kInvalidExponent,
                "exponent must be a finite real >= 1, got " + std::to_string(n));
  }
}

struct DerivedConstants {
  double p = 0.0;
  double q = 0.0;
  double t = 0.0;  // (p/q)^(1/(n-1))
  double r = 0.0;  // ((b+c)/q)^(1/(n-1))
  double lambda = 0.0;
};

// Roots are taken in log space so that large and non-integer n behave.
inline DerivedConstants derived_constants(const CanonicalTriangle& tri,
                                          double n) {
  require_exponent_above_one(n);
  DerivedConstants k;
  k.p = tri.p();
  k.q = tri.q();
  k.t = std::exp(std::log(k.p / k.q) / (n - 1.0));
  k.r = std::exp(std::log(tri.base() / k.q) / (n - 1.0));
  k.lambda = k.q + tri.base() * k.r + k.p * k.t;
  return k;
}

struct MinimizerResult {
  Point2 point_canonical;
  Point2 point_original;
  double value = 0.0;
  DerivedConstants constants;
  double exponent = 0.0;
};

namespace detail {

inline MinimizerResult closed_form_in_frame(const CanonicalTriangle& tri,
                                            double n) {
  const DerivedConstants k = derived_constants(tri, n);
  const double a = tri.a(), b = tri.b(), c = tri.c();
  MinimizerResult res;
  res.exponent = n;
  res.constants = k;
  res.point_canonical = {-(b * k.q - c * k.p * k.t) / k.lambda,
                         a * (b + c) * k.r / k.lambda};
  res.point_original = res.point_canonical;
  // a(b+c)/lambda is the distance to AC at the minimizer; the remaining
  // factor t^n + r^n + 1 folds in the other two sides.
  const double scale = a * (b + c) / k.lambda;
  res.value = std::pow(scale, n) *
              (std::pow(k.t, n) + std::pow(k.r, n) + 1.0);
  return res;
}

}  // namespace detail

inline MinimizerResult minimize_closed_form(const CanonicalTriangle& tri,
                                            double n) {
  return detail::closed_form_in_frame(tri, n);
}

inline MinimizerResult minimize_closed_form(const Canonicalization& frame,
                                            double n) {
  MinimizerResult res = detail::closed_form_in_frame(frame.triangle, n);
  res.point_original = frame.isometry.inverse(res.point_canonical);
  return res;
}

// The minimum value rewritten through t^n + r^n + 1 = lambda/q, i.e.
// a^n (b+c)^n / (q lambda^(n-1)). Used as a cross-check of the primary form.
inline double closed_form_value_via_identity(const CanonicalTriangle& tri,
                                             double n) {
  const DerivedConstants k = derived_constants(tri, n);
  return std::pow(tri.a() * tri.base() / k.lambda, n) * k.lambda / k.q;
}

// F at A, B and C.
inline std::array<double, 3> vertex_values(const CanonicalTriangle& tri,
                                           double n) {
  require_exponent_at_least_one(n);
  const double a = tri.a();
  return {std::pow(a, n), std::pow(a * tri.base() / tri.q(), n),
          std::pow(a * tri.base() / tri.p(), n)};
}

enum class VertexLabel { kA, kB, kC };

inline char to_char(VertexLabel v) {
  switch (v) {
    case VertexLabel::kA: return 'A';
    case VertexLabel::kB: return 'B';
    case VertexLabel::kC: return 'C';
  }
  return '?';
}

struct VertexMinimum {
  VertexLabel vertex = VertexLabel::kA;
  Point2 point;
  double value = 0.0;
};

// For n = 1 the sum of distances is minimized at the vertex carrying the
// smallest altitude, and the minimum is that altitude. Ties go to A, then B.
inline VertexMinimum minimize_n1(const CanonicalTriangle& tri) {
  const Altitudes h = altitudes(tri);
  VertexMinimum best{VertexLabel::kA, tri.A(), h.from_a};
  if (h.from_b < best.value) best = {VertexLabel::kB, tri.B(), h.from_b};
  if (h.from_c < best.value) best = {VertexLabel::kC, tri.C(), h.from_c};
  return best;
}

// Limit of the minimizers as n grows, where t and r both tend to 1.
inline Point2 limit_point(const CanonicalTriangle& tri) {
  const double p = tri.p(), q = tri.q(), b = tri.b(), c = tri.c();
  const double lambda_inf = q + (b + c) + p;
  return {-(b * q - c * p) / lambda_inf, tri.a() * (b + c) / lambda_inf};
}

struct SequenceEntry {
  double n = 0.0;
  Point2 point;
  double value = 0.0;
  double distance_to_limit = 0.0;
};

inline std::vector<SequenceEntry> critical_point_sequence(
    const CanonicalTriangle& tri, std::span<const double> n_values) {
  for (double n : n_values) require_exponent_above_one(n);
  const Point2 limit = limit_point(tri);
  std::vector<SequenceEntry> out;
  out.reserve(n_values.size());
  for (double n : n_values) {
    const MinimizerResult m = minimize_closed_form(tri, n);
    out.push_back({n, m.point_canonical, m.value,
                   distance(m.point_canonical, limit)});
  }
  return out;
}

}  // namespace tripowmin

#endif  // TRIPOWMIN_CLOSED_FORM_HPP_
