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

#include "tripowmin/closed_form.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "test_support.hpp"
#include "tripowmin/kkt.hpp"

namespace tripowmin {
namespace {

using testing::rel_err;

const CanonicalTriangle kT312(3.0, 1.0, 2.0);

// Reference values below come from a 40-digit mpmath root solve of the
// gradient of F, independent of the closed form.
constexpr double kN3X = 0.24909592911953662;
constexpr double kN3Y = 0.88240426243793735;
constexpr double kN3Value = 2.3359118471059207;

TEST(DerivedConstants, Examples) {
  const DerivedConstants k2 = derived_constants(kT312, 2);
  EXPECT_LT(rel_err(k2.p, std::sqrt(10.0)), 1e-15);
  EXPECT_LT(rel_err(k2.q, std::sqrt(13.0)), 1e-15);
  EXPECT_NEAR(k2.t, 0.877058019307029, 1e-14);
  EXPECT_NEAR(k2.r, 0.832050294337844, 1e-14);
  EXPECT_LT(rel_err(k2.lambda, 32 / std::sqrt(13.0)), 1e-14);

  const DerivedConstants k3 = derived_constants(kT312, 3);
  EXPECT_NEAR(k3.t, 0.936513758204880, 1e-14);
  EXPECT_NEAR(k3.r, 0.912167909070388, 1e-14);
  EXPECT_NEAR(k3.lambda, 9.303571538686778, 1e-13);

  for (double n : {1.5, 2.0, 7.0, 100.0}) {
    EXPECT_EQ(derived_constants(CanonicalTriangle(2, 1.3, 1.3), n).t, 1.0);
  }
}

TEST(DerivedConstants, RejectsExponentAtMostOne) {
  for (double n : {1.0, 0.5, -2.0}) {
    try {
      derived_constants(kT312, n);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidExponent);
    }
  }
}

TEST(DerivedConstants, LambdaOverQIdentity) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> nd(1.05, 50.0);
  for (int k = 0; k < 500; ++k) {
    const CanonicalTriangle t = testing::random_canonical(rng);
    const double n = nd(rng);
    const DerivedConstants c = derived_constants(t, n);
    EXPECT_GT(c.lambda, 0.0);
    EXPECT_LT(rel_err(std::pow(c.t, n) + std::pow(c.r, n) + 1.0, c.lambda / c.q),
              1e-12);
  }
}

TEST(MinimizeClosedForm, ExactInstanceN2) {
  const MinimizerResult m = minimize_closed_form(kT312, 2);
  EXPECT_LT(rel_err(m.point_canonical.x, 7.0 / 32), 1e-12);
  EXPECT_LT(rel_err(m.point_canonical.y, 27.0 / 32), 1e-12);
  EXPECT_LT(rel_err(m.value, 81.0 / 32), 1e-12);
  EXPECT_EQ(m.point_original, m.point_canonical);
}

TEST(MinimizeClosedForm, IsoscelesSpecialCase) {
  const MinimizerResult m = minimize_closed_form(CanonicalTriangle(2, 1, 1), 2);
  EXPECT_EQ(m.point_canonical.x, 0.0);
  EXPECT_LT(rel_err(m.point_canonical.y, 4.0 / 7), 1e-14);
  EXPECT_LT(rel_err(m.value, 8.0 / 7), 1e-14);
}

TEST(MinimizeClosedForm, N3AgainstRootSolve) {
  const MinimizerResult m = minimize_closed_form(kT312, 3);
  EXPECT_NEAR(m.point_canonical.x, kN3X, 1e-14);
  EXPECT_NEAR(m.point_canonical.y, kN3Y, 1e-14);
  EXPECT_LT(rel_err(m.value, kN3Value), 1e-14);
}

TEST(MinimizeClosedForm, OriginalFrameThroughIsometry) {
  const GeneralTriangle t{{Point2{5, 5}, Point2{8, 6}, Point2{6, 9}}};
  const Canonicalization frame = canonicalize(t);
  const MinimizerResult m = minimize_closed_form(frame, 2.5);
  EXPECT_LT(distance(frame.isometry.forward(m.point_original), m.point_canonical),
            1e-13);
  EXPECT_NE(m.point_original, m.point_canonical);
}

TEST(MinimizeClosedForm, RandomProperties) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> nd(1.1, 50.0);
  for (int k = 0; k < 400; ++k) {
    const CanonicalTriangle t = testing::random_canonical(rng);
    const double n = k % 4 == 0 ? 2.0 + k % 9 : nd(rng);
    const MinimizerResult m = minimize_closed_form(t, n);
    const DerivedConstants& c = m.constants;
    const double a = t.a(), b = t.b(), cc = t.c();

    // Value forms agree.
    EXPECT_LT(rel_err(m.value, closed_form_value_via_identity(t, n)), 1e-12);
    EXPECT_GT(m.value, 0.0);

    // Strictly inside, with the slack identities.
    const ConstraintValues g = constraint_values(t, m.point_canonical);
    EXPECT_GT(g.ab, 0.0);
    EXPECT_GT(g.ac, 0.0);
    EXPECT_GT(g.bc, 0.0);
    EXPECT_LT(rel_err(g.ab, a * c.p * c.t * (b + cc) / c.lambda), 1e-10);
    EXPECT_LT(rel_err(g.ac, a * c.q * (b + cc) / c.lambda), 1e-10);

    // Distance ratios.
    const SideDistances d = side_distances(t, m.point_canonical);
    EXPECT_LT(rel_err(d.d1 / d.d2, c.t), 1e-10);
    EXPECT_LT(rel_err(d.d3 / d.d2, c.r), 1e-10);

    // F evaluated directly matches.
    EXPECT_LT(rel_err(evaluate_F(t, n, m.point_canonical), m.value), 1e-12);
  }
}

TEST(MinimizeClosedForm, BeatsEveryVertex) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 300; ++k) {
    const CanonicalTriangle t = testing::random_canonical(rng);
    for (double n : {2.0, 3.0, 6.0, 15.0}) {
      const auto vv = vertex_values(t, n);
      EXPECT_LT(minimize_closed_form(t, n).value,
                std::min({vv[0], vv[1], vv[2]}));
    }
  }
}

TEST(MinimizeClosedForm, ReflectionAndScaleEquivariance) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 200; ++k) {
    const CanonicalTriangle t = testing::random_canonical(rng);
    for (double n : {1.5, 2.0, 3.0, 9.0}) {
      const EquivarianceErrors refl = reflection_errors(t, n);
      EXPECT_LE(refl.point, 1e-12);
      EXPECT_LE(refl.value, 1e-12);
      for (double s : {0.01, 7.0, 100.0}) {
        const EquivarianceErrors sc = scale_errors(t, n, s);
        EXPECT_LE(sc.point, 1e-12);
        EXPECT_LE(sc.value, 1e-12);
      }
    }
  }
}

TEST(MinimizeClosedForm, IsoscelesN2Formula) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double a = u(rng), b = u(rng);
    const MinimizerResult m = minimize_closed_form(CanonicalTriangle(a, b, b), 2);
    const double den = a * a + 3 * b * b;
    EXPECT_EQ(m.point_canonical.x, 0.0);
    EXPECT_LT(rel_err(m.point_canonical.y, 2 * a * b * b / den), 1e-12);
    EXPECT_LT(rel_err(m.value, 2 * a * a * b * b / den), 1e-12);
  }
}

TEST(VertexValues, Examples) {
  const auto v = vertex_values(kT312, 2);
  EXPECT_LT(rel_err(v[0], 9.0), 1e-15);
  EXPECT_LT(rel_err(v[1], 81.0 / 13), 1e-14);
  EXPECT_LT(rel_err(v[2], 8.1), 1e-14);
  const auto u = vertex_values(CanonicalTriangle(1, 1, 1), 1);
  EXPECT_EQ(u[0], 1.0);
  EXPECT_LT(rel_err(u[1], std::sqrt(2.0)), 1e-15);
  EXPECT_LT(rel_err(u[2], std::sqrt(2.0)), 1e-15);
  EXPECT_THROW(vertex_values(kT312, 0.5), Error);
}

TEST(VertexValues, MatchDirectEvaluation) {
  std::mt19937_64 rng(26);
  for (int k = 0; k < 200; ++k) {
    const CanonicalTriangle t = testing::random_canonical(rng);
    for (double n : {1.0, 2.0, 3.0, 5.0}) {
      const auto v = vertex_values(t, n);
      EXPECT_LT(rel_err(v[0], evaluate_F(t, n, t.A())), 1e-12);
      EXPECT_LT(rel_err(v[1], evaluate_F(t, n, t.B())), 1e-12);
      EXPECT_LT(rel_err(v[2], evaluate_F(t, n, t.C())), 1e-12);
      EXPECT_LT(rel_err(v[1] / v[2], std::pow(t.p() / t.q(), n)), 1e-12);
    }
  }
}

TEST(MinimizeN1, Examples) {
  const VertexMinimum m = minimize_n1(kT312);
  EXPECT_EQ(m.vertex, VertexLabel::kB);
  EXPECT_EQ(m.point, (Point2{-1, 0}));
  EXPECT_LT(rel_err(m.value, 9 / std::sqrt(13.0)), 1e-15);

  const VertexMinimum u = minimize_n1(CanonicalTriangle(1, 1, 1));
  EXPECT_EQ(u.vertex, VertexLabel::kA);
  EXPECT_EQ(u.value, 1.0);

  const CanonicalTriangle eq(std::sqrt(3.0), 1, 1);
  EXPECT_EQ(minimize_n1(eq).vertex, VertexLabel::kA);
  EXPECT_LT(rel_err(minimize_n1(eq).value, std::sqrt(3.0)), 1e-15);
}

TEST(MinimizeN1, EqualsSmallestVertexValue) {
  std::mt19937_64 rng(27);
  for (int k = 0; k < 300; ++k) {
    const CanonicalTriangle t = testing::random_canonical(rng);
    const auto v = vertex_values(t, 1);
    EXPECT_LT(rel_err(minimize_n1(t).value, std::min({v[0], v[1], v[2]})), 1e-12);
  }
}

TEST(LimitPoint, Examples) {
  const Point2 l = limit_point(kT312);
  EXPECT_NEAR(l.x, 0.278363192352195, 1e-14);
  EXPECT_NEAR(l.y, 0.921392057468228, 1e-14);
  EXPECT_EQ(limit_point(CanonicalTriangle(4, 2, 2)).x, 0.0);
  const Point2 g = limit_point(CanonicalTriangle(2, 1, 1));
  EXPECT_EQ(g.x, 0.0);
  EXPECT_LT(rel_err(g.y, 2 / (std::sqrt(5.0) + 1)), 1e-15);
}

TEST(LimitPoint, IsTheIncenter) {
  std::mt19937_64 rng(28);
  for (int k = 0; k < 300; ++k) {
    const CanonicalTriangle t = testing::random_canonical(rng);
    EXPECT_LE(distance(limit_point(t), incenter(t)), 1e-14 * t.diameter());
  }
}

TEST(CriticalPointSequence, Examples) {
  const std::vector<double> ns{2, 3};
  const auto seq = critical_point_sequence(kT312, ns);
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq[0].n, 2.0);
  EXPECT_NEAR(seq[0].point.x, 0.21875, 1e-15);
  EXPECT_NEAR(seq[1].point.y, kN3Y, 1e-14);
  EXPECT_NEAR(seq[0].distance_to_limit, 0.0978878020507123, 1e-13);
  EXPECT_NEAR(seq[1].distance_to_limit, 0.0487505985445684, 1e-13);

  const std::vector<double> many{1.5, 2, 10, 1000};
  for (const auto& e : critical_point_sequence(CanonicalTriangle(3, 2, 2), many)) {
    EXPECT_EQ(e.point.x, 0.0);
  }

  std::vector<double> powers;
  for (int k = 1; k <= 14; ++k) powers.push_back(std::ldexp(1.0, k));
  const auto conv = critical_point_sequence(kT312, powers);
  EXPECT_LE(conv.back().distance_to_limit, 1e-3);
  for (std::size_t i = 1; i < conv.size(); ++i) {
    EXPECT_LT(conv[i].distance_to_limit, conv[i - 1].distance_to_limit);
  }
}

TEST(CriticalPointSequence, RejectsBadExponentBeforeComputing) {
  const std::vector<double> ns{2, 3, 1};
  EXPECT_THROW(critical_point_sequence(kT312, ns), Error);
}

TEST(CriticalPointSequence, ContractsTowardIncenter) {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 100; ++k) {
    const CanonicalTriangle t = testing::random_canonical(rng);
    const ConvergenceCheck c = incenter_convergence(t);
    EXPECT_LE(c.worst_ratio, 0.7);
    EXPECT_LE(c.final_distance, 1e-3);
  }
}

}  // namespace
}  // namespace tripowmin
