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

#ifndef TRIPOWMIN_NUMERIC_ORACLE_HPP_
#define TRIPOWMIN_NUMERIC_ORACLE_HPP_

// Formula-free minimizers of F used as ground truth for the closed form:
// a deterministic zooming barycentric grid search and a projected gradient
// descent with backtracking.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tripowmin/closed_form.hpp"
#include "tripowmin/error.hpp"
#include "tripowmin/geometry.hpp"
#include "tripowmin/kkt.hpp"

namespace tripowmin {

struct OracleConfig {
  int grid_resolution = 64;  // lattice points per barycentric axis
  int zoom_iterations = 8;
  double zoom_factor = 4.0;
  double pg_step = 0.0;  // <= 0 selects 0.1 * diameter
  double pg_tolerance = 1e-10;
  int pg_max_iters = 10000;

  void validate() const {
    if (grid_resolution < 1 || zoom_iterations < 0 || !(zoom_factor > 1.0) ||
        !(pg_tolerance > 0.0) || pg_max_iters < 1 || !std::isfinite(pg_step)) {
      throw Error(ErrorCode::kInvalidArgument, "invalid oracle configuration");
    }
  }
};

struct GridSearchResult {
  Point2 point;
  double value = 0.0;
  // Best value after the initial grid and after each zoom.
  std::vector<double> best_per_iteration;
};

inline GridSearchResult grid_search(const CanonicalTriangle& tri, double n,
                                    const OracleConfig& cfg = {}) {
  require_exponent_at_least_one(n);
  cfg.validate();
  const int N = cfg.grid_resolution;
  std::array<Point2, 3> window = tri.vertices();

  GridSearchResult res;
  res.value = std::numeric_limits<double>::infinity();
  res.best_per_iteration.reserve(cfg.zoom_iterations + 1);
  for (int iter = 0; iter <= cfg.zoom_iterations; ++iter) {
    // Index order (i, then j) is the tie-break: first strict minimum wins.
    for (int i = 0; i <= N; ++i) {
      for (int j = 0; j <= N - i; ++j) {
        const int k = N - i - j;
        const Point2 P = project_to_triangle(
            tri, (static_cast<double>(i) * window[0] +
                  static_cast<double>(j) * window[1] +
                  static_cast<double>(k) * window[2]) /
                     static_cast<double>(N));
        const double f = evaluate_F(tri, n, P);
        if (f < res.value) {
          res.value = f;
          res.point = P;
        }
      }
    }
    res.best_per_iteration.push_back(res.value);

    // Shrunken copy of the window centred on the incumbent. It may stick out
    // of the triangle; lattice points are projected back in above.
    const Point2 centroid = (window[0] + window[1] + window[2]) / 3.0;
    for (Point2& w : window) {
      w = res.point + (w - centroid) / cfg.zoom_factor;
    }
  }
  return res;
}

struct ProjectedGradientResult {
  Point2 point;
  double value = 0.0;
  int iterations = 0;
  // Length of the last attempted move, in reference-triangle units.
  double last_move = 0.0;
  // F at the start and after every accepted move.
  std::vector<double> history;
  // F(after) - F(before) for every accepted move, computed without
  // cancellation; strictly negative.
  std::vector<double> decrements;
};

namespace detail {

// Affine chart from the equilateral reference triangle (side 2, canonical
// frame) onto the problem triangle, vertex to vertex. Descending in the
// reference coordinates removes the conditioning penalty of thin triangles.
class ReferenceChart {
 public:
  explicit ReferenceChart(const CanonicalTriangle& tri)
      : reference_(std::sqrt(3.0), 1.0, 1.0), origin_(tri.B()) {
    // Columns: images of the reference edge vectors C-B and A-B.
    const Point2 ref_u = reference_.C() - reference_.B();
    const Point2 ref_v = reference_.A() - reference_.B();
    const Point2 img_u = tri.C() - tri.B();
    const Point2 img_v = tri.A() - tri.B();
    // J = [img_u img_v] [ref_u ref_v]^-1
    const double det = cross(ref_u, ref_v);
    const Point2 inv_row0{ref_v.y / det, -ref_v.x / det};
    const Point2 inv_row1{-ref_u.y / det, ref_u.x / det};
    j00_ = img_u.x * inv_row0.x + img_v.x * inv_row1.x;
    j01_ = img_u.x * inv_row0.y + img_v.x * inv_row1.y;
    j10_ = img_u.y * inv_row0.x + img_v.y * inv_row1.x;
    j11_ = img_u.y * inv_row0.y + img_v.y * inv_row1.y;
  }

  const CanonicalTriangle& reference() const { return reference_; }

  Point2 to_triangle(Point2 z) const {
    const Point2 d = z - reference_.B();
    return origin_ + Point2{j00_ * d.x + j01_ * d.y, j10_ * d.x + j11_ * d.y};
  }
  Point2 to_reference(Point2 P) const {
    const Point2 d = P - origin_;
    const double det = j00_ * j11_ - j01_ * j10_;
    return reference_.B() + Point2{(j11_ * d.x - j01_ * d.y) / det,
                                   (-j10_ * d.x + j00_ * d.y) / det};
  }
  // Chain rule: J^T g.
  Point2 pull_back(Point2 g) const {
    return {j00_ * g.x + j10_ * g.y, j01_ * g.x + j11_ * g.y};
  }

 private:
  CanonicalTriangle reference_;
  Point2 origin_;
  double j00_ = 0.0, j01_ = 0.0, j10_ = 0.0, j11_ = 0.0;
};

// Interior gradient formulas need positive slacks; boundary iterates are
// moved a hair toward the incenter first.
inline Point2 nudge_inside(const CanonicalTriangle& tri, Point2 P) {
  const NormalizedSlacks s = normalized_slacks(tri, P);
  if (s.u > 0.0 && s.v > 0.0 && s.w > 0.0) return P;
  const Point2 to_center = incenter(tri) - P;
  const double len = norm(to_center);
  if (len == 0.0) return P;
  return P + (1e-12 * tri.a() / len) * to_center;
}

// F(Q) - F(P) from the slack differences, accurate even when the change is
// far below the rounding error of F itself.
inline double F_difference(const CanonicalTriangle& tri, double n, Point2 P,
                           Point2 Q) {
  const NormalizedSlacks sp = normalized_slacks(tri, P);
  const Point2 d = Q - P;
  const std::array<double, 3> s{sp.u, sp.v, sp.w};
  const std::array<double, 3> ds{(tri.a() * d.x - tri.b() * d.y) / tri.p(),
                                 (-tri.a() * d.x - tri.c() * d.y) / tri.q(),
                                 d.y};
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (s[i] > 0.0 && ds[i] / s[i] > -1.0) {
      total += std::pow(s[i], n) * std::expm1(n * std::log1p(ds[i] / s[i]));
    } else {
      total += std::pow(std::abs(s[i] + ds[i]), n) - std::pow(std::abs(s[i]), n);
    }
  }
  return total;
}

}  // namespace detail

// x <- project(x - step * grad F). The step is halved until F decreases by
// the quadratic-model amount (measured with F_difference) and doubled after every accepted move. Iterates live in the reference chart;
// the first trial move has length cfg.pg_step relative to the triangle
// diameter, so the scheme is invariant to the scale of F.
inline ProjectedGradientResult projected_gradient(const CanonicalTriangle& tri,
                                                  double n, Point2 start,
                                                  const OracleConfig& cfg = {}) {
  require_exponent_above_one(n);
  cfg.validate();
  if (distance(project_to_triangle(tri, start), start) > 1e-9 * tri.a()) {
    throw Error(ErrorCode::kPointNotFeasible,
                "projected gradient must start in the closed triangle");
  }
  const detail::ReferenceChart chart(tri);
  const CanonicalTriangle& ref = chart.reference();
  const double stop = cfg.pg_tolerance * ref.a();
  const double first_move =
      (cfg.pg_step > 0.0 ? cfg.pg_step / tri.diameter() : 0.1) *
      ref.diameter();

  auto grad_at = [&](Point2 z) {
    const Point2 P = chart.to_triangle(detail::nudge_inside(ref, z));
    return chart.pull_back(gradient(tri, n, P));
  };

  ProjectedGradientResult res;
  Point2 z = project_to_triangle(ref, chart.to_reference(start));
  double fz = evaluate_F(tri, n, chart.to_triangle(z));
  res.history.push_back(fz);
  double step = -1.0;
  bool converged = false;
  while (res.iterations < cfg.pg_max_iters) {
    ++res.iterations;
    const Point2 g = grad_at(z);
    const double gnorm = norm(g);
    if (!(gnorm > 0.0)) {
      res.last_move = 0.0;
      converged = true;
      break;
    }
    if (step < 0.0) step = first_move / gnorm;
    bool accepted = false;
    while (step * gnorm > stop) {
      const Point2 cand = project_to_triangle(ref, z - step * g);
      const double df = detail::F_difference(tri, n, chart.to_triangle(z),
                                             chart.to_triangle(cand));
      const Point2 d = cand - z;
      if (df < 0.0 && df <= dot(g, d) + dot(d, d) / (2.0 * step)) {
        z = cand;
        fz = evaluate_F(tri, n, chart.to_triangle(z));
        res.history.push_back(fz);
        res.decrements.push_back(df);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    res.last_move = step * gnorm;
    if (!accepted || res.last_move <= stop) {
      converged = true;
      break;
    }
    step *= 2.0;
  }
  res.point = chart.to_triangle(z);
  res.value = fz;
  if (!converged && res.last_move > 100.0 * stop) {
    throw Error(ErrorCode::kDidNotConverge,
                "projected gradient hit the iteration cap after " +
                    std::to_string(res.iterations) + " iterations");
  }
  return res;
}

struct DiscrepancyReport {
  double point_gap = 0.0;
  double value_gap_rel = 0.0;
  double oracle_value = 0.0;
  double closed_form_value = 0.0;
  Point2 oracle_point;
  Point2 closed_form_point;
  GridSearchResult grid;
  ProjectedGradientResult descent;
  bool passed = false;
};

// Runs both oracles and measures the closed form against whichever of them
// reached the lower value.
inline DiscrepancyReport compare(const CanonicalTriangle& tri, double n,
                                 const OracleConfig& cfg, double point_tol,
                                 double value_tol) {
  require_exponent_above_one(n);
  const MinimizerResult cf = minimize_closed_form(tri, n);
  DiscrepancyReport rep;
  rep.grid = grid_search(tri, n, cfg);
  const auto v = tri.vertices();
  rep.descent = projected_gradient(tri, n, (v[0] + v[1] + v[2]) / 3.0, cfg);

  const bool grid_better = rep.grid.value <= rep.descent.value;
  rep.oracle_point = grid_better ? rep.grid.point : rep.descent.point;
  rep.oracle_value = grid_better ? rep.grid.value : rep.descent.value;
  rep.closed_form_point = cf.point_canonical;
  rep.closed_form_value = cf.value;
  rep.point_gap = distance(rep.oracle_point, cf.point_canonical);
  rep.value_gap_rel = std::abs(rep.oracle_value - cf.value) / cf.value;
  rep.passed = rep.point_gap <= point_tol && rep.value_gap_rel <= value_tol;
  return rep;
}

}  // namespace tripowmin

#endif  // TRIPOWMIN_NUMERIC_ORACLE_HPP_
