#include "hypspec/hypgeom.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hypspec/error.hpp"

namespace hypspec::hypgeom {

namespace {

double sinh_half_sq(double x) {
  const double s = std::sinh(0.5 * x);
  return s * s;
}

// Inverse of sinh^2(x/2) = q.
double from_sinh_half_sq(double q) { return 2.0 * std::asinh(std::sqrt(q)); }

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << x;
    fail(ErrorKind::InvalidGeometry, os.str());
  }
}

}  // namespace

double cosh_minus_one(double x) { return 2.0 * sinh_half_sq(x); }

double acosh_one_plus(double u) {
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

bool is_valid(const TriangleSides& s) noexcept {
  auto ok = [](double x) { return x > 0.0 && std::isfinite(x); };
  return ok(s.a) && ok(s.b) && ok(s.c) && s.a < s.b + s.c &&
         s.b < s.a + s.c && s.c < s.a + s.b;
}

void validate(const TriangleSides& s) {
  if (!is_valid(s)) {
    std::ostringstream os;
    os.precision(17);
    os << "degenerate triangle sides (" << s.a << ", " << s.b << ", " << s.c
       << ")";
    fail(ErrorKind::InvalidGeometry, os.str());
  }
}

double half_angle_sin2(double opposite, double b, double c) {
  const double s = 0.5 * (opposite + b + c);
  return std::sinh(s - b) * std::sinh(s - c) / (std::sinh(b) * std::sinh(c));
}

TriangleAngles triangle_angles(const TriangleSides& sides) {
  validate(sides);
  const double s = 0.5 * (sides.a + sides.b + sides.c);
  const double sh = std::sinh(s);
  const double sa = std::sinh(s - sides.a);
  const double sb = std::sinh(s - sides.b);
  const double sc = std::sinh(s - sides.c);
  // tan(angle/2) = sqrt(sinh(s-b) sinh(s-c) / (sinh s sinh(s-a)))
  auto angle = [sh](double opp, double p, double q) {
    return 2.0 * std::atan(std::sqrt(p * q / (sh * opp)));
  };
  return {angle(sa, sb, sc), angle(sb, sa, sc), angle(sc, sa, sb)};
}

double triangle_area(const TriangleAngles& angles) {
  constexpr double pi = std::numbers::pi;
  for (double x : {angles.alpha, angles.beta, angles.gamma}) {
    if (!(x > 0.0 && x < pi)) {
      std::ostringstream os;
      os << "triangle angle out of (0, pi): " << x;
      fail(ErrorKind::InvalidGeometry, os.str());
    }
  }
  const double deficit = pi - angles.sum();
  if (!(deficit > 0.0)) {
    fail(ErrorKind::InvalidGeometry, "angle sum >= pi is not hyperbolic");
  }
  return deficit;
}

double triangle_area(const TriangleSides& sides) {
  return triangle_area(triangle_angles(sides));
}

SeamLengths pants_seams(const CuffLengths& cuffs) {
  for (int i = 0; i < 3; ++i) require_positive(cuffs[i], "cuff length");
  SeamLengths out;
  for (int k = 0; k < 3; ++k) {
    const double hk = 0.5 * cuffs[k];
    const double hi = 0.5 * cuffs[(k + 1) % 3];
    const double hj = 0.5 * cuffs[(k + 2) % 3];
    // cosh s - 1 = (cosh hk + cosh(hi - hj)) / (sinh hi sinh hj)
    const double u =
        (std::cosh(hk) + std::cosh(hi - hj)) / (std::sinh(hi) * std::sinh(hj));
    out.seam[k] = acosh_one_plus(u);
  }
  return out;
}

double law_of_cosines_side(double b, double c, double enclosed_angle) {
  require_positive(b, "side");
  require_positive(c, "side");
  const double sh = std::sin(0.5 * enclosed_angle);
  // sinh^2(a/2) = sinh^2((b-c)/2) + sinh b sinh c sin^2(A/2)
  return from_sinh_half_sq(sinh_half_sq(b - c) +
                           std::sinh(b) * std::sinh(c) * sh * sh);
}

double right_triangle_hypotenuse(double leg1, double leg2) {
  require_positive(leg1, "leg");
  require_positive(leg2, "leg");
  return from_sinh_half_sq(sinh_half_sq(leg1) * std::cosh(leg2) +
                           sinh_half_sq(leg2));
}

double median_length(const TriangleSides& sides, Corner vertex) {
  validate(sides);
  const int v = static_cast<int>(vertex);
  const double opp = sides[v];
  const double p = sides[(v + 1) % 3];
  const double q = sides[(v + 2) % 3];
  // Half-triangle: vertex, the corner between opp and q (angle enclosed by
  // opp and q, opposite side p), and the midpoint of opp.
  const double sin2 = half_angle_sin2(p, opp, q);
  const double h = 0.5 * opp;
  return from_sinh_half_sq(sinh_half_sq(q - h) +
                           std::sinh(q) * std::sinh(h) * sin2);
}

double midsegment_length(const TriangleSides& sides, Corner vertex) {
  validate(sides);
  const int v = static_cast<int>(vertex);
  const double opp = sides[v];
  const double p = sides[(v + 1) % 3];
  const double q = sides[(v + 2) % 3];
  const double sin2 = half_angle_sin2(opp, p, q);
  const double hp = 0.5 * p;
  const double hq = 0.5 * q;
  return from_sinh_half_sq(sinh_half_sq(hp - hq) +
                           std::sinh(hp) * std::sinh(hq) * sin2);
}

}  // namespace hypspec::hypgeom
