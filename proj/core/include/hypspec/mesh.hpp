#pragma once

// Coordinate-free triangulations of closed hyperbolic surfaces.
//
// A Mesh is a Delta-complex: triangles reference explicit edge ids, so loops
// and multiple edges between the same vertex pair are representable. This is
// needed because a coarse pants triangulation places only two vertices on
// each cuff. The metric is carried entirely by edge lengths; every triangle
// is a geodesic triangle of curvature -1 with those side lengths.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "hypspec/hypgeom.hpp"
#include "hypspec/surface_spec.hpp"

namespace hypspec {

inline constexpr std::size_t kDefaultMaxTriangles = 2'000'000;

/// Triangle cap: HYPSPEC_MAX_TRIANGLES if set and parseable, otherwise
/// kDefaultMaxTriangles.
std::size_t default_max_triangles();

struct MeshEdge {
  int v0 = 0;
  int v1 = 0;
  double length = 0.0;
};

/// A triangle side: the edge it runs along and whether the triangle's
/// boundary traverses that edge from v0 to v1.
struct Side {
  int edge = 0;
  bool forward = true;
};

/// Which pants, which of its two hexagons, and which coarse triangle a
/// (possibly refined) triangle descends from.
struct TriangleTag {
  int pants = 0;
  int hexagon = 0;
  int coarse_cell = 0;
};

/// Corners are counter-clockwise; sides[k] is opposite corners[k] and runs
/// from corners[k+1] to corners[k+2].
struct MeshTriangle {
  std::array<int, 3> corners{};
  std::array<Side, 3> sides{};
  TriangleTag tag;
  double area = 0.0;
};

/// Boundary circle of one pants, as a cyclic vertex sequence. edges[i] runs
/// from vertices[i] to vertices[i+1] in the orientation of the pants.
struct CuffLoop {
  CuffRef cuff;
  std::vector<int> vertices;
  std::vector<Side> edges;
};

class Mesh {
 public:
  Mesh() = default;

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int genus() const { return genus_; }
  int pants_count() const { return pants_count_; }
  /// Number of 4-subdivision passes applied to the coarse triangulation.
  int level() const { return level_; }

  std::span<const MeshEdge> edges() const { return edges_; }
  std::span<const MeshTriangle> triangles() const { return triangles_; }
  std::span<const CuffLoop> cuff_loops() const { return cuff_loops_; }

  int coarse_cell_count() const {
    return static_cast<int>(coarse_areas_.size());
  }
  std::span<const double> coarse_cell_areas() const { return coarse_areas_; }

  hypgeom::TriangleSides sides(int triangle) const;
  /// The two triangles incident to an edge.
  std::array<int, 2> edge_triangles(int edge) const {
    return edge_triangles_[edge];
  }
  const CuffLoop& cuff_loop(CuffRef ref) const;

  double total_area() const;
  double max_edge_length() const;
  double min_triangle_area() const;
  int euler_characteristic() const {
    return vertex_count_ - edge_count() + triangle_count();
  }

  /// One pass of midpoint 4-subdivision using exact hyperbolic midsegments.
  Mesh refined() const;

  /// Throws Error(Internal) when the Delta-complex is inconsistent.
  void check_invariants() const;

 private:
  friend class MeshBuilder;

  void rebuild_adjacency();

  int vertex_count_ = 0;
  int genus_ = 0;
  int pants_count_ = 0;
  int level_ = 0;
  std::vector<MeshEdge> edges_;
  std::vector<MeshTriangle> triangles_;
  std::vector<std::array<int, 2>> edge_triangles_;
  std::vector<CuffLoop> cuff_loops_;
  std::vector<double> coarse_areas_;
};

/// Eight geodesic triangles per pants: each pants is cut along its seams into
/// two right-angled hexagons, and each hexagon into a central triangle plus
/// three right-angled ears. Cuffs carry two vertices (the seam endpoints).
Mesh coarse_mesh(const Surface& surface);

/// Coarse mesh refined until every edge is at most h_max.
Mesh triangulate(const Surface& surface, double h_max,
                 std::size_t max_triangles = default_max_triangles());

// Plain-text export, header line "HYPMESH 1".
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

}  // namespace hypspec
