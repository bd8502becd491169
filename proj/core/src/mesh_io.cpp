#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hypspec/error.hpp"
#include "hypspec/mesh.hpp"
#include "mesh_internal.hpp"

// HYPMESH 1
// genus <g> pants <n> level <r>
// vertices <V> edges <E> triangles <F> coarse_cells <C> cuffs <K>
// e <v0> <v1> <length>                                    (E lines)
// t <c0> <c1> <c2> <s0> <s1> <s2> <l0> <l1> <l2> <pants> <hexagon> <cell>
//                                                          (F lines)
// a <coarse cell area>                                    (C lines)
// c <pants> <cuff> <m> <v_1..v_m> <s_1..s_m>              (K lines)
//
// A signed side s is the edge id when traversed v0 -> v1 and -(id + 1)
// otherwise. Side k is opposite corner k and l_k is its length.

namespace hypspec {

namespace {

std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

long long encode(const Side& s) { return s.forward ? s.edge : -(s.edge + 1LL); }

Side decode(long long v) {
  return v >= 0 ? Side{static_cast<int>(v), true}
                : Side{static_cast<int>(-v - 1), false};
}

void expect(std::istream& in, const char* word) {
  std::string w;
  if (!(in >> w) || w != word) {
    fail(ErrorKind::Parse, std::string("HYPMESH: expected '") + word +
                               "', found '" + w + "'");
  }
}

template <typename T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) fail(ErrorKind::Parse, std::string("HYPMESH: bad ") + what);
  return v;
}

}  // namespace

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << "HYPMESH 1\n";
  out << "genus " << mesh.genus() << " pants " << mesh.pants_count()
      << " level " << mesh.level() << '\n';
  out << "vertices " << mesh.vertex_count() << " edges " << mesh.edge_count()
      << " triangles " << mesh.triangle_count() << " coarse_cells "
      << mesh.coarse_cell_count() << " cuffs " << mesh.cuff_loops().size()
      << '\n';
  for (const MeshEdge& e : mesh.edges()) {
    out << "e " << e.v0 << ' ' << e.v1 << ' ' << fmt(e.length) << '\n';
  }
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const MeshTriangle& tri = mesh.triangles()[t];
    out << 't';
    for (int c : tri.corners) out << ' ' << c;
    for (const Side& s : tri.sides) out << ' ' << encode(s);
    for (const Side& s : tri.sides) out << ' ' << fmt(mesh.edges()[s.edge].length);
    out << ' ' << tri.tag.pants << ' ' << tri.tag.hexagon << ' '
        << tri.tag.coarse_cell << '\n';
  }
  for (double a : mesh.coarse_cell_areas()) out << "a " << fmt(a) << '\n';
  for (const CuffLoop& loop : mesh.cuff_loops()) {
    out << "c " << loop.cuff.pants << ' ' << loop.cuff.cuff << ' '
        << loop.vertices.size();
    for (int v : loop.vertices) out << ' ' << v;
    for (const Side& s : loop.edges) out << ' ' << encode(s);
    out << '\n';
  }
}

Mesh read_mesh(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "HYPMESH") {
    fail(ErrorKind::Parse, "not a HYPMESH file");
  }
  if (version != 1) {
    fail(ErrorKind::Parse, "unsupported HYPMESH version " + std::to_string(version));
  }
  expect(in, "genus");
  const int genus = read_value<int>(in, "genus");
  expect(in, "pants");
  const int pants = read_value<int>(in, "pants");
  expect(in, "level");
  const int level = read_value<int>(in, "level");
  expect(in, "vertices");
  const int nv = read_value<int>(in, "vertex count");
  expect(in, "edges");
  const int ne = read_value<int>(in, "edge count");
  expect(in, "triangles");
  const int nt = read_value<int>(in, "triangle count");
  expect(in, "coarse_cells");
  const int nc = read_value<int>(in, "coarse cell count");
  expect(in, "cuffs");
  const int nk = read_value<int>(in, "cuff count");
  if (nv < 0 || ne < 0 || nt < 0 || nc < 0 || nk < 0) {
    fail(ErrorKind::Parse, "HYPMESH: negative count");
  }

  std::vector<MeshEdge> edges(ne);
  for (auto& e : edges) {
    expect(in, "e");
    e.v0 = read_value<int>(in, "edge vertex");
    e.v1 = read_value<int>(in, "edge vertex");
    e.length = read_value<double>(in, "edge length");
    if (e.v0 < 0 || e.v0 >= nv || e.v1 < 0 || e.v1 >= nv) {
      fail(ErrorKind::Parse, "HYPMESH: edge vertex out of range");
    }
  }
  std::vector<MeshTriangle> tris(nt);
  for (auto& t : tris) {
    expect(in, "t");
    for (int& c : t.corners) c = read_value<int>(in, "corner");
    for (Side& s : t.sides) {
      s = decode(read_value<long long>(in, "side"));
      if (s.edge < 0 || s.edge >= ne) fail(ErrorKind::Parse, "HYPMESH: side out of range");
    }
    for (int k = 0; k < 3; ++k) read_value<double>(in, "side length");
    t.tag.pants = read_value<int>(in, "pants tag");
    t.tag.hexagon = read_value<int>(in, "hexagon tag");
    t.tag.coarse_cell = read_value<int>(in, "cell tag");
  }
  std::vector<double> areas(nc);
  for (double& a : areas) {
    expect(in, "a");
    a = read_value<double>(in, "coarse area");
  }
  std::vector<CuffLoop> loops(nk);
  for (auto& loop : loops) {
    expect(in, "c");
    loop.cuff.pants = read_value<int>(in, "cuff pants");
    loop.cuff.cuff = read_value<int>(in, "cuff index");
    const int m = read_value<int>(in, "cuff size");
    if (m < 0) fail(ErrorKind::Parse, "HYPMESH: negative cuff size");
    loop.vertices.resize(m);
    loop.edges.resize(m);
    for (int& v : loop.vertices) v = read_value<int>(in, "cuff vertex");
    for (Side& s : loop.edges) s = decode(read_value<long long>(in, "cuff side"));
  }
  for (auto& t : tris) {
    for (int c : t.corners) {
      if (c < 0 || c >= nv) fail(ErrorKind::Parse, "HYPMESH: corner out of range");
    }
  }
  try {
    Mesh m = mesh_from_parts(nv, genus, pants, level, std::move(edges),
                             std::move(tris), std::move(loops),
                             std::move(areas));
    return m;
  } catch (const Error& e) {
    fail(ErrorKind::Parse, std::string("HYPMESH: ") + e.what());
  }
}

}  // namespace hypspec
