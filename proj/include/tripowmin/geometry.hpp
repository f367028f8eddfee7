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

#ifndef TRIPOWMIN_GEOMETRY_HPP_
#define TRIPOWMIN_GEOMETRY_HPP_

// Planar triangle primitives in the canonical frame A(0,a), B(-b,0), C(c,0):
// the apex altitude runs along the y-axis with its foot at the origin.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "tripowmin/error.hpp"

namespace tripowmin {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 l, Point2 r) { return {l.x + r.x, l.y + r.y}; }
  friend Point2 operator-(Point2 l, Point2 r) { return {l.x - r.x, l.y - r.y}; }
  friend Point2 operator-(Point2 v) { return {-v.x, -v.y}; }
  friend Point2 operator*(double s, Point2 v) { return {s * v.x, s * v.y}; }
  friend Point2 operator*(Point2 v, double s) { return {s * v.x, s * v.y}; }
  friend Point2 operator/(Point2 v, double s) { return {v.x / s, v.y / s}; }
  friend bool operator==(Point2 l, Point2 r) = default;
};

inline double dot(Point2 u, Point2 v) { return u.x * v.x + u.y * v.y; }
inline double cross(Point2 u, Point2 v) { return u.x * v.y - u.y * v.x; }
inline double norm(Point2 v) { return std::hypot(v.x, v.y); }
inline double distance(Point2 u, Point2 v) { return norm(u - v); }

// Relative area threshold below which a triangle is rejected as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-12;

class CanonicalTriangle {
 public:
  CanonicalTriangle(double a, double b, double c) : a_(a), b_(b), c_(c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a) ||
        !std::isfinite(b) || !std::isfinite(c)) {
      throw Error(ErrorCode::kDegenerateTriangle,
                  "canonical triangle needs finite a, b, c > 0");
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

  // Side lengths |AB| and |AC|.
  double p() const { return std::hypot(a_, b_); }
  double q() const { return std::hypot(a_, c_); }
  double base() const { return b_ + c_; }

  Point2 A() const { return {0.0, a_}; }
  Point2 B() const { return {-b_, 0.0}; }
  Point2 C() const { return {c_, 0.0}; }
  std::array<Point2, 3> vertices() const { return {A(), B(), C()}; }

  double diameter() const { return std::max({p(), q(), base()}); }

  // The same triangle mirrored across the y-axis.
  CanonicalTriangle reflected() const { return {a_, c_, b_}; }
  CanonicalTriangle scaled(double s) const { return {s * a_, s * b_, s * c_}; }

  friend bool operator==(const CanonicalTriangle&,
                         const CanonicalTriangle&) = default;

 private:
  double a_;
  double b_;
  double c_;
};

struct GeneralTriangle {
  std::array<Point2, 3> v;

  double longest_side() const {
    return std::max({distance(v[0], v[1]), distance(v[1], v[2]),
                     distance(v[2], v[0])});
  }
  double doubled_signed_area() const { return cross(v[1] - v[0], v[2] - v[0]); }
  bool is_degenerate() const {
    const double l = longest_side();
    return !(std::abs(doubled_signed_area()) > kDegeneracyTolerance * l * l);
  }
};

// Orientation-preserving rigid motion from the input frame to the canonical
// frame: forward(P) = R(angle) P + translation.
struct Isometry {
  double angle = 0.0;
  Point2 translation;
  // Input vertex indices that became A, B and C.
  std::size_t apex_index = 0;
  std::size_t left_index = 1;
  std::size_t right_index = 2;

  Point2 forward(Point2 p) const {
    const double cs = std::cos(angle), sn = std::sin(angle);
    return Point2{cs * p.x - sn * p.y, sn * p.x + cs * p.y} + translation;
  }
  Point2 inverse(Point2 p) const {
    const double cs = std::cos(angle), sn = std::sin(angle);
    const Point2 d = p - translation;
    return {cs * d.x + sn * d.y, -sn * d.x + cs * d.y};
  }
};

struct Canonicalization {
  CanonicalTriangle triangle;
  Isometry isometry;
};

namespace detail {

// Base angles whose cosine falls below this are treated as right angles.
inline constexpr double kAcuteCosineMargin = 1e-9;

inline std::array<double, 3> vertex_cosines(const GeneralTriangle& t) {
  std::array<double, 3> cosines{};
  for (std::size_t i = 0; i < 3; ++i) {
    const Point2 u = t.v[(i + 1) % 3] - t.v[i];
    const Point2 w = t.v[(i + 2) % 3] - t.v[i];
    cosines[i] = dot(u, w) / (norm(u) * norm(w));
  }
  return cosines;
}

// An obtuse or right vertex must be the apex. Otherwise every vertex is a
// valid apex and the lowest index whose base angles are clearly acute wins.
inline std::size_t select_apex(const GeneralTriangle& t) {
  const auto cosines = vertex_cosines(t);
  const std::size_t widest = static_cast<std::size_t>(
      std::min_element(cosines.begin(), cosines.end()) - cosines.begin());
  if (cosines[widest] <= 0.0) return widest;
  for (std::size_t i = 0; i < 3; ++i) {
    if (cosines[(i + 1) % 3] > kAcuteCosineMargin &&
        cosines[(i + 2) % 3] > kAcuteCosineMargin) {
      return i;
    }
  }
  return widest;
}

}  // namespace detail

inline Canonicalization canonicalize(const GeneralTriangle& t) {
  for (const Point2& v : t.v) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw Error(ErrorCode::kDegenerateTriangle, "non-finite vertex");
    }
  }
  if (t.is_degenerate()) {
    throw Error(ErrorCode::kDegenerateTriangle,
                "vertices are collinear or coincident");
  }
  const std::size_t apex = detail::select_apex(t);
  std::size_t left = (apex + 1) % 3;
  std::size_t right = (apex + 2) % 3;
  // A, B, C must be counter-clockwise so that A lands above the base.
  if (cross(t.v[left] - t.v[apex], t.v[right] - t.v[apex]) < 0.0) {
    std::swap(left, right);
  }
  const Point2 A = t.v[apex], B = t.v[left], C = t.v[right];
  const Point2 u = (C - B) / norm(C - B);
  const double b = dot(A - B, u);
  const double c = dot(C - A, u);
  const double a = cross(u, A - B);
  if (!(b > 0.0) || !(c > 0.0) || !(a > 0.0)) {
    throw Error(ErrorCode::kDegenerateTriangle,
                "triangle too thin to place in the canonical frame");
  }
  const Point2 foot = B + b * u;

  Isometry iso;
  iso.angle = -std::atan2(u.y, u.x);
  iso.apex_index = apex;
  iso.left_index = left;
  iso.right_index = right;
  iso.translation = Point2{0.0, 0.0} - iso.forward(foot);
  return {CanonicalTriangle(a, b, c), iso};
}

// Signed constraint values g1 = ax - by + ab, g2 = -ax - cy + ac, g3 = y.
// All three are non-negative exactly on the closed triangle.
struct ConstraintValues {
  double ab = 0.0;
  double ac = 0.0;
  double bc = 0.0;
};

inline ConstraintValues constraint_values(const CanonicalTriangle& tri,
                                          Point2 P) {
  const double a = tri.a(), b = tri.b(), c = tri.c();
  return {a * P.x - b * P.y + a * b, -a * P.x - c * P.y + a * c, P.y};
}

struct SideDistances {
  double d1 = 0.0;  // to AB
  double d2 = 0.0;  // to AC
  double d3 = 0.0;  // to BC
};

inline SideDistances side_distances(const CanonicalTriangle& tri, Point2 P) {
  const ConstraintValues g = constraint_values(tri, P);
  return {std::abs(g.ab) / tri.p(), std::abs(g.ac) / tri.q(), std::abs(g.bc)};
}

inline bool contains(const CanonicalTriangle& tri, Point2 P) {
  const ConstraintValues g = constraint_values(tri, P);
  return g.ab >= 0.0 && g.ac >= 0.0 && g.bc >= 0.0;
}

inline Point2 closest_point_on_segment(Point2 P, Point2 s0, Point2 s1) {
  const Point2 d = s1 - s0;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return s0;
  const double s = std::clamp(dot(P - s0, d) / len2, 0.0, 1.0);
  if (s == 0.0) return s0;
  if (s == 1.0) return s1;
  return s0 + s * d;
}

// Euclidean projection onto the closed triangle. Points outside land on the
// nearest edge segment, whose clamped parameter covers the vertex regions.
inline Point2 project_to_triangle(const CanonicalTriangle& tri, Point2 P) {
  if (contains(tri, P)) return P;
  const auto v = tri.vertices();
  Point2 best = v[0];
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    const Point2 cand = closest_point_on_segment(P, v[i], v[(i + 1) % 3]);
    const Point2 d = P - cand;
    const double d2 = dot(d, d);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = cand;
    }
  }
  return best;
}

inline double inradius(const CanonicalTriangle& tri) {
  return tri.a() * tri.base() / (tri.p() + tri.q() + tri.base());
}

inline Point2 incenter(const CanonicalTriangle& tri) {
  const double p = tri.p(), q = tri.q(), b = tri.b(), c = tri.c();
  const double perimeter = p + q + b + c;
  return {-(b * q - c * p) / perimeter, tri.a() * (b + c) / perimeter};
}

struct Altitudes {
  double from_a = 0.0;
  double from_b = 0.0;
  double from_c = 0.0;
};

inline Altitudes altitudes(const CanonicalTriangle& tri) {
  const double twice_area = tri.a() * tri.base();
  return {tri.a(), twice_area / tri.q(), twice_area / tri.p()};
}

}  // namespace tripowmin

#endif  // TRIPOWMIN_GEOMETRY_HPP_
