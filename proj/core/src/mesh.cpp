#include "hypspec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "hypspec/error.hpp"
#include "mesh_internal.hpp"

namespace hypspec {

std::size_t default_max_triangles() {
  if (const char* env = std::getenv("HYPSPEC_MAX_TRIANGLES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxTriangles;
}

// Grants the construction routines access to Mesh internals.
class MeshBuilder {
 public:
  static Mesh build_coarse(const Surface& surface);
  static Mesh refine(const Mesh& mesh);
  static Mesh from_parts(int vertex_count, int genus, int pants_count,
                         int level, std::vector<MeshEdge> edges,
                         std::vector<MeshTriangle> triangles,
                         std::vector<CuffLoop> loops,
                         std::vector<double> coarse_areas);
};

namespace {

// Local vertex numbering of a pants: H0..H5 around the front hexagon, with
// H(2c) and H(2c+1) the two seam endpoints on cuff c.
constexpr int kPantsVertices = 6;

// Pants-local edge numbering.
enum LocalEdge : int {
  kSeam12 = 0,  // H1-H2, between cuffs 0 and 1
  kSeam34 = 1,  // H3-H4, between cuffs 1 and 2
  kSeam50 = 2,  // H5-H0, between cuffs 2 and 0
  kFrontCuff0 = 3,
  kFrontCuff1,
  kFrontCuff2,
  kFrontDiag02,
  kFrontDiag24,
  kFrontDiag40,
  kBackCuff0,
  kBackCuff1,
  kBackCuff2,
  kBackDiag02,
  kBackDiag24,
  kBackDiag40,
  kPantsEdges
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Side traversal halves after an edge is split at its midpoint.
Side first_half(const Side& s) {
  return s.forward ? Side{2 * s.edge, true} : Side{2 * s.edge + 1, false};
}
Side second_half(const Side& s) {
  return s.forward ? Side{2 * s.edge + 1, true} : Side{2 * s.edge, false};
}

}  // namespace

Mesh MeshBuilder::build_coarse(const Surface& surface) {
  const SurfaceSpec& spec = surface.spec;
  const int n = static_cast<int>(spec.pants.size());

  std::vector<MeshEdge> edges(static_cast<std::size_t>(n) * kPantsEdges);
  std::vector<MeshTriangle> tris;
  tris.reserve(8 * n);
  std::vector<CuffLoop> loops;
  loops.reserve(3 * n);

  for (int p = 0; p < n; ++p) {
    const hypgeom::CuffLengths& cuffs = spec.pants[p];
    const hypgeom::SeamLengths seams = hypgeom::pants_seams(cuffs);
    const int v = kPantsVertices * p;
    const int e = kPantsEdges * p;
    auto H = [v](int i) { return v + (i % kPantsVertices); };
    auto set = [&](int local, int a, int b, double len) {
      edges[e + local] = {H(a), H(b), len};
    };
    // seam[k] joins the two cuffs other than k.
    set(kSeam12, 1, 2, seams.seam[2]);
    set(kSeam34, 3, 4, seams.seam[0]);
    set(kSeam50, 5, 0, seams.seam[1]);
    const double d02 = hypgeom::right_triangle_hypotenuse(0.5 * cuffs.l1, seams.seam[2]);
    const double d24 = hypgeom::right_triangle_hypotenuse(0.5 * cuffs.l2, seams.seam[0]);
    const double d40 = hypgeom::right_triangle_hypotenuse(0.5 * cuffs.l3, seams.seam[1]);
    for (int side = 0; side < 2; ++side) {
      const int off = side == 0 ? 0 : (kBackCuff0 - kFrontCuff0);
      set(kFrontCuff0 + off, 0, 1, 0.5 * cuffs.l1);
      set(kFrontCuff1 + off, 2, 3, 0.5 * cuffs.l2);
      set(kFrontCuff2 + off, 4, 5, 0.5 * cuffs.l3);
      set(kFrontDiag02 + off, 0, 2, d02);
      set(kFrontDiag24 + off, 2, 4, d24);
      set(kFrontDiag40 + off, 4, 0, d40);
    }

    auto add = [&](int hexagon, int a, int b, int c, int ea, int eb, int ec) {
      // ea is opposite a, running b -> c, etc.
      MeshTriangle t;
      t.corners = {H(a), H(b), H(c)};
      const std::array<int, 3> local{ea, eb, ec};
      for (int k = 0; k < 3; ++k) {
        const int id = e + local[k];
        t.sides[k] = {id, edges[id].v0 == t.corners[(k + 1) % 3]};
      }
      t.tag = {p, hexagon, static_cast<int>(tris.size())};
      tris.push_back(t);
    };
    // Front hexagon: ears at H1, H3, H5 and the central triangle H0 H2 H4.
    add(0, 0, 1, 2, kSeam12, kFrontDiag02, kFrontCuff0);
    add(0, 2, 3, 4, kSeam34, kFrontDiag24, kFrontCuff1);
    add(0, 4, 5, 0, kSeam50, kFrontDiag40, kFrontCuff2);
    add(0, 0, 2, 4, kFrontDiag24, kFrontDiag40, kFrontDiag02);
    // Back hexagon is the mirror image, so its triangles run the other way.
    add(1, 0, 2, 1, kSeam12, kBackCuff0, kBackDiag02);
    add(1, 2, 4, 3, kSeam34, kBackCuff1, kBackDiag24);
    add(1, 4, 0, 5, kSeam50, kBackCuff2, kBackDiag40);
    add(1, 0, 4, 2, kBackDiag24, kBackDiag02, kBackDiag40);

    for (int c = 0; c < 3; ++c) {
      CuffLoop loop;
      loop.cuff = {p, c};
      loop.vertices = {H(2 * c), H(2 * c + 1)};
      loop.edges = {Side{e + kFrontCuff0 + c, true},
                    Side{e + kBackCuff0 + c, false}};
      loops.push_back(std::move(loop));
    }
  }

  // Glue cuffs. Loop A vertex i maps to loop B vertex (o - i) mod 2, so the
  // two boundary traversals run in opposite directions.
  const int nv = kPantsVertices * n;
  std::vector<int> vparent(nv);
  std::iota(vparent.begin(), vparent.end(), 0);
  std::vector<int> edge_alias(edges.size());
  std::iota(edge_alias.begin(), edge_alias.end(), 0);
  std::vector<char> flip(edges.size(), 0);
  for (const Gluing& g : spec.gluings) {
    const CuffLoop& A = loops[3 * g.from.pants + g.from.cuff];
    const CuffLoop& B = loops[3 * g.to.pants + g.to.cuff];
    const int m = static_cast<int>(A.vertices.size());
    const double turns = g.twist - std::floor(g.twist);
    const int offset = static_cast<int>(std::lround(turns * m)) % m;
    for (int i = 0; i < m; ++i) {
      const int j = ((offset - i) % m + m) % m;
      const int ra = find_root(vparent, A.vertices[i]);
      const int rb = find_root(vparent, B.vertices[j]);
      vparent[rb] = ra;
    }
    for (int i = 0; i < m; ++i) {
      const int j = ((offset - i - 1) % m + m) % m;
      const Side& sa = A.edges[i];
      const Side& sb = B.edges[j];
      edge_alias[sb.edge] = sa.edge;
      // B's triangle must traverse the merged edge opposite to A's triangle.
      flip[sb.edge] = static_cast<char>(sb.forward == sa.forward);
    }
  }

  std::vector<int> vid(nv, -1);
  int vcount = 0;
  for (int i = 0; i < nv; ++i) {
    const int r = find_root(vparent, i);
    if (vid[r] == -1) vid[r] = vcount++;
    vid[i] = vid[r];
  }
  std::vector<int> eid(edges.size(), -1);
  std::vector<MeshEdge> kept;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edge_alias[i] == static_cast<int>(i)) {
      eid[i] = static_cast<int>(kept.size());
      kept.push_back({vid[edges[i].v0], vid[edges[i].v1], edges[i].length});
    }
  }
  auto remap_side = [&](Side s) {
    const bool fwd = flip[s.edge] ? !s.forward : s.forward;
    return Side{eid[edge_alias[s.edge]], fwd};
  };
  for (MeshTriangle& t : tris) {
    for (int& c : t.corners) c = vid[c];
    for (Side& s : t.sides) s = remap_side(s);
  }
  for (CuffLoop& loop : loops) {
    for (int& c : loop.vertices) c = vid[c];
    for (Side& s : loop.edges) s = remap_side(s);
  }

  std::vector<double> areas;
  areas.reserve(tris.size());
  Mesh mesh;
  mesh.vertex_count_ = vcount;
  mesh.genus_ = surface.genus;
  mesh.pants_count_ = n;
  mesh.edges_ = std::move(kept);
  mesh.triangles_ = std::move(tris);
  mesh.cuff_loops_ = std::move(loops);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    mesh.triangles_[t].area = hypgeom::triangle_area(mesh.sides(t));
    areas.push_back(mesh.triangles_[t].area);
  }
  mesh.coarse_areas_ = std::move(areas);
  mesh.rebuild_adjacency();
  mesh.check_invariants();
  return mesh;
}

Mesh MeshBuilder::refine(const Mesh& src) {
  const int V = src.vertex_count_;
  const int E = src.edge_count();
  const int F = src.triangle_count();

  Mesh out;
  out.vertex_count_ = V + E;
  out.genus_ = src.genus_;
  out.pants_count_ = src.pants_count_;
  out.level_ = src.level_ + 1;
  out.coarse_areas_ = src.coarse_areas_;
  out.edges_.resize(2 * static_cast<std::size_t>(E) + 3 * static_cast<std::size_t>(F));
  out.triangles_.resize(4 * static_cast<std::size_t>(F));

  for (int e = 0; e < E; ++e) {
    const MeshEdge& ed = src.edges_[e];
    const int mid = V + e;
    out.edges_[2 * e] = {ed.v0, mid, 0.5 * ed.length};
    out.edges_[2 * e + 1] = {mid, ed.v1, 0.5 * ed.length};
  }

  for (int t = 0; t < F; ++t) {
    const MeshTriangle& pt = src.triangles_[t];
    const hypgeom::TriangleSides sides = src.sides(t);
    std::array<int, 3> mid{};
    for (int k = 0; k < 3; ++k) mid[k] = V + pt.sides[k].edge;
    const int base = 2 * E + 3 * t;
    // Interior edge base+k joins the midpoints of the two sides at corner k,
    // stored from mid[k+2] to mid[k+1].
    for (int k = 0; k < 3; ++k) {
      out.edges_[base + k] = {
          mid[(k + 2) % 3], mid[(k + 1) % 3],
          hypgeom::midsegment_length(sides, static_cast<hypgeom::Corner>(k))};
    }
    for (int k = 0; k < 3; ++k) {
      const Side& next = pt.sides[(k + 2) % 3];  // c_k -> c_{k+1}
      const Side& prev = pt.sides[(k + 1) % 3];  // c_{k+2} -> c_k
      MeshTriangle& ct = out.triangles_[4 * t + k];
      ct.corners = {pt.corners[k], mid[(k + 2) % 3], mid[(k + 1) % 3]};
      ct.sides = {Side{base + k, true}, second_half(prev), first_half(next)};
      ct.tag = pt.tag;
    }
    MeshTriangle& center = out.triangles_[4 * t + 3];
    center.corners = {mid[2], mid[0], mid[1]};
    center.sides = {Side{base + 2, false}, Side{base + 0, false},
                    Side{base + 1, false}};
    center.tag = pt.tag;
  }
  for (int t = 0; t < out.triangle_count(); ++t) {
    out.triangles_[t].area = hypgeom::triangle_area(out.sides(t));
  }

  out.cuff_loops_.reserve(src.cuff_loops_.size());
  for (const CuffLoop& loop : src.cuff_loops_) {
    CuffLoop r;
    r.cuff = loop.cuff;
    for (std::size_t i = 0; i < loop.vertices.size(); ++i) {
      r.vertices.push_back(loop.vertices[i]);
      r.vertices.push_back(V + loop.edges[i].edge);
      r.edges.push_back(first_half(loop.edges[i]));
      r.edges.push_back(second_half(loop.edges[i]));
    }
    out.cuff_loops_.push_back(std::move(r));
  }
  out.rebuild_adjacency();
  return out;
}

Mesh MeshBuilder::from_parts(int vertex_count, int genus, int pants_count,
                             int level, std::vector<MeshEdge> edges,
                             std::vector<MeshTriangle> triangles,
                             std::vector<CuffLoop> loops,
                             std::vector<double> coarse_areas) {
  Mesh m;
  m.vertex_count_ = vertex_count;
  m.genus_ = genus;
  m.pants_count_ = pants_count;
  m.level_ = level;
  m.edges_ = std::move(edges);
  m.triangles_ = std::move(triangles);
  m.cuff_loops_ = std::move(loops);
  m.coarse_areas_ = std::move(coarse_areas);
  m.rebuild_adjacency();
  m.check_invariants();
  for (int t = 0; t < m.triangle_count(); ++t) {
    m.triangles_[t].area = hypgeom::triangle_area(m.sides(t));
  }
  return m;
}

hypgeom::TriangleSides Mesh::sides(int triangle) const {
  const MeshTriangle& t = triangles_[triangle];
  return {edges_[t.sides[0].edge].length, edges_[t.sides[1].edge].length,
          edges_[t.sides[2].edge].length};
}

const CuffLoop& Mesh::cuff_loop(CuffRef ref) const {
  for (const CuffLoop& loop : cuff_loops_) {
    if (loop.cuff == ref) return loop;
  }
  fail(ErrorKind::InvalidInput, "mesh has no loop for cuff " +
                                    std::to_string(ref.cuff) + " of pants " +
                                    std::to_string(ref.pants));
}

double Mesh::total_area() const {
  // Pairwise summation keeps the roundoff of ~10^6 terms well below 1e-12.
  std::vector<double> a(triangles_.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = triangles_[i].area;
  std::size_t n = a.size();
  while (n > 1) {
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i + half < n; ++i) a[i] += a[i + half];
    n = half;
  }
  return a.empty() ? 0.0 : a[0];
}

double Mesh::max_edge_length() const {
  double m = 0.0;
  for (const MeshEdge& e : edges_) m = std::max(m, e.length);
  return m;
}

double Mesh::min_triangle_area() const {
  double m = std::numeric_limits<double>::infinity();
  for (const MeshTriangle& t : triangles_) m = std::min(m, t.area);
  return m;
}

Mesh Mesh::refined() const { return MeshBuilder::refine(*this); }

void Mesh::rebuild_adjacency() {
  edge_triangles_.assign(edges_.size(), {-1, -1});
  for (int t = 0; t < triangle_count(); ++t) {
    for (const Side& s : triangles_[t].sides) {
      auto& slot = edge_triangles_[s.edge];
      if (slot[0] == -1) {
        slot[0] = t;
      } else if (slot[1] == -1) {
        slot[1] = t;
      } else {
        fail(ErrorKind::Internal,
             "edge " + std::to_string(s.edge) + " has more than two triangles");
      }
    }
  }
}

void Mesh::check_invariants() const {
  std::vector<int> fwd(edges_.size(), 0), bwd(edges_.size(), 0);
  for (int t = 0; t < triangle_count(); ++t) {
    const MeshTriangle& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      const Side& s = tri.sides[k];
      if (s.edge < 0 || s.edge >= edge_count()) {
        fail(ErrorKind::Internal, "triangle references a missing edge");
      }
      const MeshEdge& e = edges_[s.edge];
      const int from = tri.corners[(k + 1) % 3];
      const int to = tri.corners[(k + 2) % 3];
      const bool ok = s.forward ? (e.v0 == from && e.v1 == to)
                                : (e.v1 == from && e.v0 == to);
      if (!ok) {
        fail(ErrorKind::Internal, "triangle " + std::to_string(t) +
                                      " side " + std::to_string(k) +
                                      " disagrees with its edge endpoints");
      }
      (s.forward ? fwd : bwd)[s.edge]++;
    }
    hypgeom::validate(sides(t));
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (fwd[e] != 1 || bwd[e] != 1) {
      fail(ErrorKind::Internal,
           "edge " + std::to_string(e) +
               " is not shared by exactly two oppositely oriented triangles");
    }
  }
}

Mesh coarse_mesh(const Surface& surface) {
  return MeshBuilder::build_coarse(surface);
}

Mesh triangulate(const Surface& surface, double h_max,
                 std::size_t max_triangles) {
  if (!(h_max > 0.0) || !std::isfinite(h_max)) {
    fail(ErrorKind::Domain, "h_max must be positive");
  }
  Mesh mesh = coarse_mesh(surface);
  while (mesh.max_edge_length() > h_max) {
    const std::size_t next = 4 * static_cast<std::size_t>(mesh.triangle_count());
    if (next > max_triangles) {
      std::ostringstream os;
      os << "refining to h_max=" << h_max << " needs " << next
         << " triangles, cap is " << max_triangles;
      fail(ErrorKind::ResourceLimit, os.str());
    }
    mesh = mesh.refined();
  }
  return mesh;
}

Mesh mesh_from_parts(int vertex_count, int genus, int pants_count, int level,
                     std::vector<MeshEdge> edges,
                     std::vector<MeshTriangle> triangles,
                     std::vector<CuffLoop> loops,
                     std::vector<double> coarse_areas) {
  return MeshBuilder::from_parts(vertex_count, genus, pants_count, level,
                                 std::move(edges), std::move(triangles),
                                 std::move(loops), std::move(coarse_areas));
}

}  // namespace hypspec
