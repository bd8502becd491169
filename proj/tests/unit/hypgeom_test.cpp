#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hypspec/error.hpp"
#include "hypspec/hypgeom.hpp"
#include "oracles.hpp"

using namespace hypspec;
using namespace hypspec::hypgeom;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

}  // namespace

TEST(TriangleAngles, SmallEquilateralApproachesEuclidean) {
  double prev = 0.0;
  for (double t : {1e-1, 1e-2, 1e-4, 1e-6}) {
    const TriangleAngles a = triangle_angles({t, t, t});
    EXPECT_LT(a.alpha, kPi / 3);
    EXPECT_GT(a.alpha, prev);
    prev = a.alpha;
  }
  EXPECT_NEAR(prev, kPi / 3, 1e-11);
}

TEST(TriangleAngles, LargeEquilateralIsNearlyIdeal) {
  // Each angle is acos(cosh a / (cosh a + 1)) ~ sqrt(2 / cosh a), so the
  // deficit from pi is still about 0.04 at a = 10 and drops below 1e-3 near a = 17.4.
  const double area10 = triangle_area(TriangleSides{10, 10, 10});
  EXPECT_LT(area10, kPi);
  EXPECT_LT(rel(area10, oracle::area(10, 10, 10)), 1e-12);
  const double area18 = triangle_area(TriangleSides{18, 18, 18});
  EXPECT_LT(area18, kPi);
  EXPECT_GT(area18, kPi - 1e-3);
  EXPECT_LT(rel(area18, oracle::area(18, 18, 18)), 1e-12);
}

TEST(TriangleAngles, Log4EquilateralMatchesHighPrecision) {
  const double s = std::log(4.0);
  const TriangleAngles a = triangle_angles({s, s, s});
  const auto ref = oracle::angles(s, s, s);
  for (int k = 0; k < 3; ++k) EXPECT_LT(rel(a[k], ref[k]), 1e-12);
  EXPECT_LT(rel(triangle_area(a), oracle::area(s, s, s)), 1e-12);
}

TEST(TriangleAngles, GridMatchesHighPrecision) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> side(0.01, 4.0);
  int checked = 0;
  while (checked < 100) {
    const TriangleSides s{side(rng), side(rng), side(rng)};
    if (!is_valid(s)) continue;
    // Keep away from degenerate slivers where the angle itself is ill-conditioned.
    if (s.a + s.b - s.c < 0.05 || s.a + s.c - s.b < 0.05 || s.b + s.c - s.a < 0.05) continue;
    const TriangleAngles a = triangle_angles(s);
    const auto ref = oracle::angles(s.a, s.b, s.c);
    for (int k = 0; k < 3; ++k) EXPECT_LT(rel(a[k], ref[k]), 1e-12) << s.a << ' ' << s.b << ' ' << s.c;
    EXPECT_LT(rel(triangle_area(s), oracle::area(s.a, s.b, s.c)), 1e-12);
    ++checked;
  }
}

TEST(TriangleAngles, RejectsDegenerateSides) {
  EXPECT_THROW(triangle_angles({1, 1, 2}), Error);
  EXPECT_THROW(triangle_angles({1, 1, 3}), Error);
  EXPECT_THROW(triangle_angles({0, 1, 1}), Error);
  EXPECT_THROW(triangle_angles({-1, 1, 1}), Error);
  EXPECT_THROW(triangle_angles({NAN, 1, 1}), Error);
  try {
    triangle_angles({1, 1, 2});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidGeometry);
  }
}

TEST(TriangleArea, DeficitArithmetic) {
  const double x = kPi / 3 - 1e-9;
  EXPECT_NEAR(triangle_area(TriangleAngles{x, x, x}), 3e-9, 1e-15);
  EXPECT_NEAR(triangle_area(TriangleAngles{1e-12, 1e-12, 1e-12}), kPi, 1e-11);
  EXPECT_THROW(triangle_area(TriangleAngles{1, 1, 1.2}), Error);
}

TEST(TriangleArea, MonotoneInEachSideUpToTheMaximum) {
  // With b, c fixed the area grows with a while alpha < beta + gamma and
  // shrinks afterwards, reaching 0 again at the degenerate end a = b + c.
  for (double b : {0.5, 1.0, 2.0}) {
    for (double c : {0.7, 1.5}) {
      double prev = 0.0;
      bool past_peak = false;
      for (double a = std::abs(b - c) + 0.01; a < b + c; a += 0.01) {
        const TriangleAngles ang = triangle_angles({a, b, c});
        const double area = triangle_area(ang);
        EXPECT_GT(area, 0.0);
        EXPECT_LT(area, kPi);
        if (ang.alpha < ang.beta + ang.gamma - 1e-9) {
          EXPECT_FALSE(past_peak);
          EXPECT_GT(area, prev);
        } else if (ang.alpha > ang.beta + ang.gamma + 1e-9) {
          if (past_peak) EXPECT_LT(area, prev);
          past_peak = true;
        }
        prev = area;
      }
    }
  }
}

TEST(PantsSeams, SymmetricCuffsGiveEqualSeams) {
  const SeamLengths s = pants_seams({1, 1, 1});
  EXPECT_DOUBLE_EQ(s.seam[0], s.seam[1]);
  EXPECT_DOUBLE_EQ(s.seam[1], s.seam[2]);
}

TEST(PantsSeams, MatchHighPrecisionAndHexagonSineLaw) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> len(0.05, 8.0);
  for (int i = 0; i < 100; ++i) {
    const CuffLengths c{len(rng), len(rng), len(rng)};
    const SeamLengths s = pants_seams(c);
    const auto ref = oracle::seams(c.l1, c.l2, c.l3);
    // Opposite sides of a right-angled hexagon: sinh(a_k)/sinh(b_k) is constant.
    std::array<double, 3> ratio{};
    for (int k = 0; k < 3; ++k) {
      EXPECT_LT(rel(s.seam[k], ref[k]), 1e-12);
      ratio[k] = std::sinh(c[k] / 2) / std::sinh(s.seam[k]);
    }
    EXPECT_LT(rel(ratio[1], ratio[0]), 1e-12);
    EXPECT_LT(rel(ratio[2], ratio[0]), 1e-12);
  }
}

TEST(PantsSeams, PermutationCovariant) {
  const SeamLengths s = pants_seams({0.7, 1.3, 2.9});
  const SeamLengths t = pants_seams({2.9, 0.7, 1.3});
  EXPECT_DOUBLE_EQ(s.seam[0], t.seam[1]);
  EXPECT_DOUBLE_EQ(s.seam[1], t.seam[2]);
  EXPECT_DOUBLE_EQ(s.seam[2], t.seam[0]);
}

TEST(PantsSeams, ShrinkAsCuffsGrow) {
  double prev = std::numeric_limits<double>::infinity();
  for (double L = 0.1; L < 40; L *= 1.5) {
    const double s = pants_seams({L, L, L}).seam[0];
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, prev);
    prev = s;
  }
  EXPECT_LT(prev, 2e-3);
  EXPECT_THROW(pants_seams({0, 1, 1}), Error);
  EXPECT_THROW(pants_seams({1, -1, 1}), Error);
}

TEST(Median, IsoscelesRightTriangleRelation) {
  for (double a : {0.3, 1.0, 2.5}) {
    for (double c : {0.2 * a, 1.0 * a, 1.9 * a}) {
      const double m = median_length({a, a, c}, Corner::C);
      EXPECT_LT(rel(std::cosh(a), std::cosh(c / 2) * std::cosh(m)), 1e-12);
      EXPECT_LT(m, a);
    }
  }
}

TEST(Median, EuclideanLimit) {
  const double a = 0.7, b = 0.9, c = 1.1;
  const double euclid = 0.5 * std::sqrt(2 * a * a + 2 * b * b - c * c);
  for (double t : {1e-3, 1e-5}) {
    EXPECT_NEAR(median_length({t * a, t * b, t * c}, Corner::C) / t, euclid, 1e-5);
  }
}

TEST(Median, ScaleneMatchesHalfTriangleOracle) {
  const TriangleSides s{0.7, 0.9, 1.1};
  EXPECT_LT(rel(median_length(s, Corner::C), oracle::median_to_c(0.7, 0.9, 1.1)), 1e-12);
  EXPECT_LT(rel(median_length(s, Corner::A), oracle::median_to_c(0.9, 1.1, 0.7)), 1e-12);
  EXPECT_LT(rel(median_length(s, Corner::B), oracle::median_to_c(1.1, 0.7, 0.9)), 1e-12);
  EXPECT_LT(median_length(s, Corner::C), std::max(s.a, s.b));
  EXPECT_THROW(median_length({1, 1, 3}, Corner::A), Error);
}

TEST(Midsegment, SubtrianglesTileTheParent) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> side(0.05, 3.0);
  for (int i = 0; i < 200; ++i) {
    const TriangleSides s{side(rng), side(rng), side(rng)};
    if (!is_valid(s)) continue;
    const double ma = midsegment_length(s, Corner::A);
    const double mb = midsegment_length(s, Corner::B);
    const double mc = midsegment_length(s, Corner::C);
    const double total = triangle_area(TriangleSides{ma, s.b / 2, s.c / 2}) +
                         triangle_area(TriangleSides{s.a / 2, mb, s.c / 2}) +
                         triangle_area(TriangleSides{s.a / 2, s.b / 2, mc}) +
                         triangle_area(TriangleSides{ma, mb, mc});
    EXPECT_LT(rel(total, triangle_area(s)), 1e-11);
  }
}

TEST(StablePrimitives, SmallArguments) {
  for (double x : {1e-3, 1e-6, 1e-9}) {
    EXPECT_LT(rel(cosh_minus_one(x), 2 * std::pow(std::sinh(x / 2), 2)), 1e-14);
    EXPECT_LT(rel(acosh_one_plus(cosh_minus_one(x)), x), 1e-12);
  }
  EXPECT_LT(rel(law_of_cosines_side(1.0, 1.0, kPi / 2), std::acosh(std::cosh(1.0) * std::cosh(1.0))),
            1e-12);
  EXPECT_LT(rel(right_triangle_hypotenuse(0.5, 0.8), std::acosh(std::cosh(0.5) * std::cosh(0.8))),
            1e-12);
}
