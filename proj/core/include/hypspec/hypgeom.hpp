#pragma once

// Closed-form hyperbolic trigonometry (curvature -1) for geodesic triangles,
// right-angled hexagons and pairs of pants.
//
// Side a is opposite corner A, b opposite B, c opposite C. Every formula is
// evaluated in a half-angle / sinh^2(x/2) form so that short edges produced
// by repeated refinement do not lose digits to cosh(x) - 1 cancellation.

#include <array>

namespace hypspec::hypgeom {

/// Residual tolerance for trigonometric identities.
inline constexpr double kIdentityTolerance = 1e-12;

enum class Corner : int { A = 0, B = 1, C = 2 };

struct TriangleSides {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

struct TriangleAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double sum() const { return alpha + beta + gamma; }
  double operator[](int i) const { return i == 0 ? alpha : (i == 1 ? beta : gamma); }
};

struct CuffLengths {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;

  double operator[](int i) const { return i == 0 ? l1 : (i == 1 ? l2 : l3); }
};

/// seam[k] is the common perpendicular between the two cuffs other than k.
struct SeamLengths {
  std::array<double, 3> seam{};
};

/// Throws Error(InvalidGeometry) unless all sides are positive, finite and
/// satisfy the strict triangle inequalities.
void validate(const TriangleSides& sides);
bool is_valid(const TriangleSides& sides) noexcept;

TriangleAngles triangle_angles(const TriangleSides& sides);

/// Gauss-Bonnet: area = pi - (alpha + beta + gamma).
double triangle_area(const TriangleAngles& angles);
double triangle_area(const TriangleSides& sides);

SeamLengths pants_seams(const CuffLengths& cuffs);

/// Length of the geodesic from `vertex` to the midpoint of the opposite side.
double median_length(const TriangleSides& sides, Corner vertex);

/// Length of the geodesic joining the midpoints of the two sides that meet
/// at `vertex`.
double midsegment_length(const TriangleSides& sides, Corner vertex);

/// Hypotenuse of a right triangle with the given legs: cosh d = cosh x cosh y.
double right_triangle_hypotenuse(double leg1, double leg2);

/// Side opposite an angle enclosed by sides of lengths b and c.
double law_of_cosines_side(double b, double c, double enclosed_angle);

/// sin^2(angle/2) at the corner enclosed by sides b and c, opposite side a.
double half_angle_sin2(double opposite, double b, double c);

// Stable primitives.
double cosh_minus_one(double x);
double acosh_one_plus(double u);

}  // namespace hypspec::hypgeom
