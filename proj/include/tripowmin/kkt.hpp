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

#ifndef TRIPOWMIN_KKT_HPP_
#define TRIPOWMIN_KKT_HPP_

// Certification layer: the objective F, its analytic derivatives, and a
// Karush-Kuhn-Tucker check for the three-constraint problem
//   min F(x,y)  s.t.  g1 = ax - by + ab >= 0, g2 = -ax - cy + ac >= 0,
//                     g3 = y >= 0,
// with Lagrangian L = F - l1 g1 - l2 g2 - l3 g3.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "tripowmin/closed_form.hpp"
#include "tripowmin/error.hpp"
#include "tripowmin/geometry.hpp"

namespace tripowmin {

inline double evaluate_F(const CanonicalTriangle& tri, double n, Point2 P) {
  require_exponent_at_least_one(n);
  const SideDistances d = side_distances(tri, P);
  return std::pow(d.d1, n) + std::pow(d.d2, n) + std::pow(d.d3, n);
}

namespace detail {

// Normalized slacks: signed distances to the three side lines.
struct NormalizedSlacks {
  double u = 0.0;  // g1 / p
  double v = 0.0;  // g2 / q
  double w = 0.0;  // g3
};

inline NormalizedSlacks normalized_slacks(const CanonicalTriangle& tri,
                                          Point2 P) {
  const ConstraintValues g = constraint_values(tri, P);
  return {g.ab / tri.p(), g.ac / tri.q(), g.bc};
}

inline void require_interior(const NormalizedSlacks& s) {
  if (!(s.u > 0.0) || !(s.v > 0.0) || !(s.w > 0.0)) {
    throw Error(ErrorCode::kPointNotInterior,
                "derivative formulas need a point strictly inside the triangle");
  }
}

// Gradient on the closed triangle. Negative slacks are clamped to zero,
// which is exact on the boundary for n > 1.
inline Point2 gradient_clamped(const CanonicalTriangle& tri, double n,
                               Point2 P) {
  const NormalizedSlacks s = normalized_slacks(tri, P);
  const double a = tri.a(), b = tri.b(), c = tri.c();
  const double p = tri.p(), q = tri.q();
  const double D = std::pow(std::max(s.u, 0.0), n - 1.0);
  const double E = std::pow(std::max(s.v, 0.0), n - 1.0);
  const double Y = std::pow(std::max(s.w, 0.0), n - 1.0);
  return {n * a / p * D - n * a / q * E,
          -n * b / p * D - n * c / q * E + n * Y};
}

// Sum of magnitudes of the gradient's building blocks, n (D + E + y^(n-1)).
// Strictly positive anywhere in the closed triangle.
inline double gradient_scale(const CanonicalTriangle& tri, double n,
                             Point2 P) {
  const NormalizedSlacks s = normalized_slacks(tri, P);
  return n * (std::pow(std::max(s.u, 0.0), n - 1.0) +
              std::pow(std::max(s.v, 0.0), n - 1.0) +
              std::pow(std::max(s.w, 0.0), n - 1.0));
}

}  // namespace detail

// (dF/dx, dF/dy) at an interior point.
inline Point2 gradient(const CanonicalTriangle& tri, double n, Point2 P) {
  require_exponent_above_one(n);
  detail::require_interior(detail::normalized_slacks(tri, P));
  return detail::gradient_clamped(tri, n, P);
}

struct Hessian {
  double fxx = 0.0;
  double fxy = 0.0;
  double fyy = 0.0;
  // Expanded closed-form determinant in terms of G = u^(n-2), H = v^(n-2).
  double det = 0.0;

  double det_from_entries() const { return fxx * fyy - fxy * fxy; }
  bool positive_definite() const { return fxx > 0.0 && det > 0.0; }
};

inline Hessian hessian(const CanonicalTriangle& tri, double n, Point2 P) {
  require_exponent_above_one(n);
  const detail::NormalizedSlacks s = detail::normalized_slacks(tri, P);
  detail::require_interior(s);
  const double a = tri.a(), b = tri.b(), c = tri.c();
  const double p = tri.p(), q = tri.q();
  const double p2 = p * p, q2 = q * q, a2 = a * a;
  const double G = std::pow(s.u, n - 2.0);
  const double H = std::pow(s.v, n - 2.0);
  const double y = s.w;
  const double nn = n * (n - 1.0);

  Hessian h;
  h.fxx = nn * a2 * (G / p2 + H / q2);
  h.fxy = nn * (-a * b * G / p2 + a * c * H / q2);
  h.fyy = nn * (b * b * G / p2 + c * c * H / q2 + std::pow(y, n - 2.0));
  const double yn = std::pow(y, n);
  const double y2 = y * y;
  h.det = nn * nn / (p2 * q2 * y2) *
          (G * a2 * q2 * yn + H * a2 * p2 * yn + G * H * a2 * b * b * y2 +
           G * H * a2 * c * c * y2 + 2.0 * G * H * a2 * b * c * y2);
  return h;
}

enum class KktVerdict { kSatisfied, kMultiplierNegative, kStationarityFailed };

inline std::string_view to_string(KktVerdict v) {
  switch (v) {
    case KktVerdict::kSatisfied: return "Satisfied";
    case KktVerdict::kMultiplierNegative: return "MultiplierNegative";
    case KktVerdict::kStationarityFailed: return "StationarityFailed";
  }
  return "Unknown";
}

// Constraint order everywhere: AB (g1), AC (g2), BC (g3).
struct KktReport {
  std::array<bool, 3> active{};
  std::array<double, 3> multipliers{};
  // |grad L| in the units of dF/dx.
  double stationarity_residual = 0.0;
  // |grad L| divided by n (D + E + y^(n-1)); what the verdict is based on.
  double relative_stationarity_residual = 0.0;
  // max_i |l_i g_i|, made dimensionless the same way.
  double complementary_slackness_residual = 0.0;
  // Second-order data, present at interior points only.
  std::optional<double> hessian_fxx;
  std::optional<double> hessian_det;
  KktVerdict verdict = KktVerdict::kSatisfied;

  int active_count() const {
    return static_cast<int>(std::count(active.begin(), active.end(), true));
  }
};

// Slack (as a distance) at or below tolerance * a marks a constraint active.
inline constexpr double kDefaultKktTolerance = 1e-9;

inline KktReport kkt_residual(const CanonicalTriangle& tri, double n,
                              Point2 P,
                              double tolerance = kDefaultKktTolerance) {
  require_exponent_above_one(n);
  const detail::NormalizedSlacks s = detail::normalized_slacks(tri, P);
  const double a = tri.a(), b = tri.b(), c = tri.c();
  const double band = tolerance * a;
  const std::array<double, 3> slack{s.u, s.v, s.w};
  for (double sl : slack) {
    if (sl < -band) {
      throw Error(ErrorCode::kPointNotFeasible,
                  "point lies outside the closed triangle");
    }
  }
  // Constraint gradients.
  const std::array<Point2, 3> dg{Point2{a, -b}, Point2{-a, -c},
                                 Point2{0.0, 1.0}};

  KktReport rep;
  for (int i = 0; i < 3; ++i) rep.active[i] = slack[i] <= band;
  if (rep.active_count() == 3) {
    // Only possible when the band swallows the whole triangle; keep the two
    // tightest constraints.
    const int loosest = static_cast<int>(
        std::max_element(slack.begin(), slack.end()) - slack.begin());
    rep.active[loosest] = false;
  }

  const Point2 grad = detail::gradient_clamped(tri, n, P);
  const double scale = detail::gradient_scale(tri, n, P);
  std::array<double, 3>& mu = rep.multipliers;
  // Magnitude each multiplier is judged against when testing its sign.
  std::array<double, 3> sign_scale{scale, scale, scale};
  if (rep.active_count() == 1) {
    // One boundary edge: the multiplier comes from the equation it enters
    // alone (dL/dx for the slanted sides, dL/dy for the base). Its sign is
    // judged against that equation's own terms, which can be far smaller
    // than the y-term near the apex.
    const double D = std::pow(std::max(s.u, 0.0), n - 1.0);
    const double E = std::pow(std::max(s.v, 0.0), n - 1.0);
    const double Y = std::pow(std::max(s.w, 0.0), n - 1.0);
    const double x_terms = n * a * (D / tri.p() + E / tri.q());
    const double y_terms = n * (b * D / tri.p() + c * E / tri.q() + Y);
    if (rep.active[0]) mu[0] = grad.x / a;
    if (rep.active[1]) mu[1] = -grad.x / a;
    if (rep.active[2]) mu[2] = grad.y;
    sign_scale = {x_terms / a * norm(dg[0]), x_terms / a * norm(dg[1]),
                  y_terms};
  } else if (rep.active_count() == 2) {
    // Vertex: two independent constraint gradients, solve exactly.
    int i = -1, j = -1;
    for (int k = 0; k < 3; ++k) {
      if (!rep.active[k]) continue;
      (i < 0 ? i : j) = k;
    }
    const double det = cross(dg[i], dg[j]);
    mu[i] = cross(grad, dg[j]) / det;
    mu[j] = cross(dg[i], grad) / det;
  }

  Point2 lagrangian_grad = grad;
  for (int k = 0; k < 3; ++k) lagrangian_grad = lagrangian_grad - mu[k] * dg[k];
  rep.stationarity_residual = norm(lagrangian_grad);
  rep.relative_stationarity_residual = rep.stationarity_residual / scale;

  const ConstraintValues g = constraint_values(tri, P);
  const std::array<double, 3> graw{g.ab, g.ac, g.bc};
  double cs = 0.0;
  bool negative = false;
  for (int k = 0; k < 3; ++k) {
    const double weight =
        sign_scale[k] > 0.0 ? mu[k] * norm(dg[k]) / sign_scale[k] : 0.0;
    cs = std::max(cs, std::abs(mu[k] * graw[k]) / (scale * a));
    if (weight < -tolerance) negative = true;
  }
  rep.complementary_slackness_residual = cs;

  if (rep.active_count() == 0 && s.u > 0.0 && s.v > 0.0 && s.w > 0.0) {
    const Hessian h = hessian(tri, n, P);
    rep.hessian_fxx = h.fxx;
    rep.hessian_det = h.det;
  }

  if (negative) {
    rep.verdict = KktVerdict::kMultiplierNegative;
  } else if (rep.relative_stationarity_residual > tolerance ||
             cs > tolerance) {
    rep.verdict = KktVerdict::kStationarityFailed;
  } else {
    rep.verdict = KktVerdict::kSatisfied;
  }
  return rep;
}

}  // namespace tripowmin

#endif  // TRIPOWMIN_KKT_HPP_
