#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypspec/hypgeom.hpp"

namespace hypspec {

/// Tolerance for equality of glued cuff lengths.
inline constexpr double kCuffMatchTolerance = 1e-12;

/// Identifies one boundary circle: cuff index 0, 1, 2 of a given pants.
struct CuffRef {
  int pants = 0;
  int cuff = 0;

  friend bool operator==(const CuffRef&, const CuffRef&) = default;
};

/// Two cuffs identified isometrically. `twist` is a fraction of the cuff
/// length; the triangulation rounds it to the nearest half turn, which is the
/// boundary-vertex spacing of the coarse cuff.
struct Gluing {
  CuffRef from;
  CuffRef to;
  double twist = 0.0;
};

struct SurfaceSpec {
  std::vector<hypgeom::CuffLengths> pants;
  std::vector<Gluing> gluings;
};

/// A validated closed surface.
struct Surface {
  SurfaceSpec spec;
  int genus = 0;
  double area = 0.0;

  int pants_count() const { return static_cast<int>(spec.pants.size()); }
  int euler_characteristic() const { return 2 - 2 * genus; }
};

/// Closed-surface area 2*pi*(2g - 2).
double closed_surface_area(int genus);

/// Validates every invariant of the spec and throws ValidationError naming
/// the first violation.
void validate(const SurfaceSpec& spec);

Surface assemble(const SurfaceSpec& spec);

// JSON: {"pants":[{"cuffs":[l1,l2,l3]}...],
//        "gluings":[{"from":[p,c],"to":[p,c],"twist":t}...]}
nlohmann::json to_json(const SurfaceSpec& spec);
SurfaceSpec spec_from_json(const nlohmann::json& j);
SurfaceSpec read_spec(std::istream& in);
SurfaceSpec read_spec_file(const std::string& path);

}  // namespace hypspec
