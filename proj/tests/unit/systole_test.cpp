#include <bit>
#include <bitset>
#include <cmath>
#include <functional>
#include <limits>

#include <gtest/gtest.h>

#include "hypspec/family.hpp"
#include "hypspec/mesh.hpp"
#include "hypspec/surface_spec.hpp"
#include "hypspec/systole.hpp"

using namespace hypspec;

namespace {

// Shortest simple cycle outside the span of triangle boundaries, by DFS over
// all simple cycles and Gaussian elimination over GF(2).
double brute_force_systole(const Mesh& m) {
  const int E = m.edge_count();
  EXPECT_LE(E, 64);
  std::vector<std::uint64_t> basis(64, 0);  // pivot bit -> row
  auto reduce = [&](std::uint64_t v) {
    for (int b = 63; b >= 0; --b) {
      if (((v >> b) & 1) && basis[b]) v ^= basis[b];
    }
    return v;
  };
  for (const MeshTriangle& t : m.triangles()) {
    std::uint64_t v = 0;
    for (const Side& s : t.sides) v ^= std::uint64_t{1} << s.edge;
    v = reduce(v);
    if (v) basis[63 - std::countl_zero(v)] = v;
  }

  std::vector<std::vector<std::pair<int, int>>> adj(m.vertex_count());
  for (int e = 0; e < E; ++e) {
    adj[m.edges()[e].v0].emplace_back(m.edges()[e].v1, e);
    adj[m.edges()[e].v1].emplace_back(m.edges()[e].v0, e);
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> on_path(m.vertex_count(), 0);
  std::function<void(int, int, std::uint64_t, double, int)> dfs =
      [&](int start, int u, std::uint64_t used, double len, int depth) {
        for (auto [w, e] : adj[u]) {
          if ((used >> e) & 1) continue;
          const double l = len + m.edges()[e].length;
          if (l >= best) continue;
          const std::uint64_t next = used | (std::uint64_t{1} << e);
          if (w == start) {
            if (reduce(next) != 0) best = l;
          } else if (!on_path[w] && w > start) {
            on_path[w] = 1;
            dfs(start, w, next, l, depth + 1);
            on_path[w] = 0;
          }
        }
      };
  for (int s = 0; s < m.vertex_count(); ++s) {
    on_path[s] = 1;
    dfs(s, s, 0, 0.0, 0);
    on_path[s] = 0;
  }
  return best;
}

}  // namespace

TEST(Homology, RankIsTwiceGenus) {
  for (int k = 1; k <= 3; ++k) {
    const Mesh m = coarse_mesh(assemble(build_prop1_surface(k, 1)));
    const HomologyBasis h(m);
    EXPECT_EQ(h.rank(), 2 * m.genus());
  }
}

TEST(Homology, TriangleBoundariesAreTrivial) {
  const Mesh m = coarse_mesh(assemble(build_prop1_surface(2, 1))).refined();
  const HomologyBasis h(m);
  for (int t = 0; t < m.triangle_count(); ++t) {
    std::vector<int> edges;
    for (const Side& s : m.triangles()[t].sides) edges.push_back(s.edge);
    EXPECT_TRUE(h.trivial(edges));
  }
  const CuffLoop& cuff = m.cuff_loop({0, 1});
  std::vector<int> loop;
  for (const Side& s : cuff.edges) loop.push_back(s.edge);
  EXPECT_FALSE(h.trivial(loop));
}

TEST(Systole, CoarseGenusTwoMatchesBruteForce) {
  const Mesh m = coarse_mesh(assemble(build_prop1_surface(1, 1)));
  const double oracle = brute_force_systole(m);
  const CycleWitness w = shortest_nontrivial_cycle(m);
  EXPECT_NEAR(w.length, oracle, 1e-12);
  EXPECT_GE(w.length, 0.5);
  EXPECT_LE(w.length, 3.0);
  double len = 0;
  for (int e : w.edges) len += m.edges()[e].length;
  EXPECT_NEAR(len, w.length, 1e-12);
  EXPECT_FALSE(HomologyBasis(m).trivial(w.edges));
}

TEST(Systole, FamilyBoundIsAtLeastHalf) {
  for (int k = 1; k <= 2; ++k) {
    for (int l = 1; l <= 2; ++l) {
      const Mesh m = triangulate(assemble(build_prop1_surface(k, l)), 0.5);
      const double s = systole_upper_bound(m);
      EXPECT_GE(s, 0.5);
      EXPECT_LE(s, 1.0 + 1e-12);  // a cuff is a mesh cycle of length 1
    }
  }
}

TEST(Systole, RefinementDoesNotGrowBeyondOneEdge) {
  Mesh m = coarse_mesh(assemble(build_prop1_surface(1, 2, 0.5)));
  double prev = systole_upper_bound(m);
  for (int round = 0; round < 3; ++round) {
    const double h = m.max_edge_length();
    m = m.refined();
    const double s = systole_upper_bound(m);
    EXPECT_LE(s, prev + h);
    prev = s;
  }
}
