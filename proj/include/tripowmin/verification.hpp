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

#ifndef TRIPOWMIN_VERIFICATION_HPP_
#define TRIPOWMIN_VERIFICATION_HPP_

// Randomized property checks shared by `tripowmin verify` and the acceptance
// suite: seeded triangle generators plus per-triangle invariant checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tripowmin/closed_form.hpp"
#include "tripowmin/geometry.hpp"
#include "tripowmin/kkt.hpp"
#include "tripowmin/numeric_oracle.hpp"

namespace tripowmin {

inline constexpr std::array<double, 6> kVerifyExponents{2, 3, 4, 5, 7, 10};

// Vertices uniform in [-10, 10]^2, degenerate draws rejected.
inline GeneralTriangle random_vertex_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  while (true) {
    GeneralTriangle t{{Point2{coord(rng), coord(rng)},
                       Point2{coord(rng), coord(rng)},
                       Point2{coord(rng), coord(rng)}}};
    if (!t.is_degenerate()) return t;
  }
}

// Edge lengths uniform in [lo, hi] (triangle inequality enforced by
// rejection), placed with a random rigid motion.
inline GeneralTriangle random_edge_triangle(std::mt19937_64& rng,
                                            double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> edge(lo, hi);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  while (true) {
    const double e0 = edge(rng), e1 = edge(rng), e2 = edge(rng);
    if (e0 + e1 <= e2 || e1 + e2 <= e0 || e2 + e0 <= e1) continue;
    // e0 on the x-axis, e2 from the origin to the third vertex.
    const double x = (e0 * e0 + e2 * e2 - e1 * e1) / (2.0 * e0);
    const double h2 = e2 * e2 - x * x;
    if (!(h2 > 0.0)) continue;
    const double th = angle(rng);
    const Point2 d{shift(rng), shift(rng)};
    auto place = [&](Point2 p) {
      return Point2{std::cos(th) * p.x - std::sin(th) * p.y,
                    std::sin(th) * p.x + std::cos(th) * p.y} + d;
    };
    GeneralTriangle t{{place({0.0, 0.0}), place({e0, 0.0}),
                       place({x, std::sqrt(h2)})}};
    if (!t.is_degenerate()) return t;
  }
}

struct EquivarianceErrors {
  double point = 0.0;  // relative to the diameter
  double value = 0.0;  // relative to the value
};

// Mirroring across the y-axis (b <-> c) should negate x and keep y and F.
inline EquivarianceErrors reflection_errors(const CanonicalTriangle& tri,
                                            double n) {
  const MinimizerResult m = minimize_closed_form(tri, n);
  const MinimizerResult r = minimize_closed_form(tri.reflected(), n);
  const double diam = tri.diameter();
  return {std::max(std::abs(r.point_canonical.x + m.point_canonical.x),
                   std::abs(r.point_canonical.y - m.point_canonical.y)) /
              diam,
          std::abs(r.value - m.value) / m.value};
}

// Scaling the triangle by s scales the minimizer by s and F by s^n.
inline EquivarianceErrors scale_errors(const CanonicalTriangle& tri, double n,
                                       double s) {
  const MinimizerResult m = minimize_closed_form(tri, n);
  const MinimizerResult r = minimize_closed_form(tri.scaled(s), n);
  const double expected_value = m.value * std::pow(s, n);
  return {distance(r.point_canonical, s * m.point_canonical) /
              (s * tri.diameter()),
          std::abs(r.value - expected_value) / expected_value};
}

struct ConvergenceCheck {
  double worst_ratio = 0.0;     // max d(2n)/d(n) over n = 64 .. 8192
  double final_distance = 0.0;  // d(2^14) / diameter
};

inline ConvergenceCheck incenter_convergence(const CanonicalTriangle& tri) {
  std::vector<double> ns;
  for (int k = 6; k <= 14; ++k) ns.push_back(std::ldexp(1.0, k));
  const auto seq = critical_point_sequence(tri, ns);
  ConvergenceCheck out;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const double d0 = seq[i].distance_to_limit;
    const double d1 = seq[i + 1].distance_to_limit;
    // Equilateral triangles sit on the limit exactly.
    const double ratio = d0 > 0.0 ? d1 / d0 : (d1 > 0.0 ? HUGE_VAL : 0.0);
    out.worst_ratio = std::max(out.worst_ratio, ratio);
  }
  out.final_distance = seq.back().distance_to_limit / tri.diameter();
  return out;
}

inline constexpr double kReflectionTolerance = 1e-12;
inline constexpr double kScaleTolerance = 1e-11;
inline constexpr double kConvergenceRatio = 0.7;
inline constexpr double kConvergenceFinal = 1e-3;

struct TrialOutcome {
  bool passed = true;
  std::vector<std::string> failures;
};

// Oracle agreement, KKT certification, reflection and scale equivariance for
// every exponent in kVerifyExponents, then incenter convergence.
inline TrialOutcome run_verification_trial(const CanonicalTriangle& tri,
                                           double tol_point_rel,
                                           double tol_value_rel,
                                           const OracleConfig& cfg = {}) {
  TrialOutcome out;
  auto fail = [&](const std::string& what, double n) {
    std::ostringstream os;
    os.precision(12);
    os << what << " (n=" << n << ")";
    out.failures.push_back(os.str());
    out.passed = false;
  };
  for (double n : kVerifyExponents) {
    try {
      const DiscrepancyReport rep =
          compare(tri, n, cfg, tol_point_rel * tri.diameter(), tol_value_rel);
      if (!rep.passed) fail("oracle disagreement", n);
      const KktReport kkt =
          kkt_residual(tri, n, minimize_closed_form(tri, n).point_canonical);
      if (kkt.verdict != KktVerdict::kSatisfied) fail("KKT not satisfied", n);
    } catch (const Error& e) {
      fail(std::string("oracle error: ") + e.what(), n);
    }
    const EquivarianceErrors refl = reflection_errors(tri, n);
    if (refl.point > kReflectionTolerance || refl.value > kReflectionTolerance) {
      fail("reflection equivariance", n);
    }
    for (double s : {0.01, 100.0}) {
      const EquivarianceErrors sc = scale_errors(tri, n, s);
      if (sc.point > kScaleTolerance || sc.value > kScaleTolerance) {
        fail("scale equivariance", n);
      }
    }
  }
  const ConvergenceCheck conv = incenter_convergence(tri);
  if (conv.worst_ratio > kConvergenceRatio ||
      conv.final_distance > kConvergenceFinal) {
    fail("incenter convergence", std::ldexp(1.0, 14));
  }
  return out;
}

}  // namespace tripowmin

#endif  // TRIPOWMIN_VERIFICATION_HPP_
