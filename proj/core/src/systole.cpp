#include "hypspec/systole.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "hypspec/error.hpp"

namespace hypspec {

namespace {

struct Incidence {
  std::vector<int> offset;
  std::vector<int> edge;
};

Incidence vertex_incidence(const Mesh& mesh) {
  Incidence inc;
  inc.offset.assign(mesh.vertex_count() + 1, 0);
  for (const MeshEdge& e : mesh.edges()) {
    inc.offset[e.v0 + 1]++;
    if (e.v1 != e.v0) inc.offset[e.v1 + 1]++;
  }
  for (int v = 0; v < mesh.vertex_count(); ++v) inc.offset[v + 1] += inc.offset[v];
  inc.edge.resize(inc.offset.back());
  std::vector<int> fill(inc.offset.begin(), inc.offset.end() - 1);
  for (int i = 0; i < mesh.edge_count(); ++i) {
    const MeshEdge& e = mesh.edges()[i];
    inc.edge[fill[e.v0]++] = i;
    if (e.v1 != e.v0) inc.edge[fill[e.v1]++] = i;
  }
  return inc;
}

int other_end(const MeshEdge& e, int v) { return e.v0 == v ? e.v1 : e.v0; }

}  // namespace

HomologyBasis::HomologyBasis(const Mesh& mesh) {
  const int V = mesh.vertex_count();
  const int E = mesh.edge_count();
  const int F = mesh.triangle_count();
  const Incidence inc = vertex_incidence(mesh);

  // Primal BFS spanning tree.
  std::vector<char> in_tree(E, 0);
  {
    std::vector<char> seen(V, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int i = inc.offset[u]; i < inc.offset[u + 1]; ++i) {
        const int e = inc.edge[i];
        const int w = other_end(mesh.edges()[e], u);
        if (!seen[w]) {
          seen[w] = 1;
          in_tree[e] = 1;
          q.push(w);
        }
      }
    }
  }

  // Dual BFS spanning tree over triangles, avoiding primal tree edges.
  std::vector<int> dual_parent(F, -1), dual_parent_edge(F, -1), depth(F, -1);
  std::vector<char> in_cotree(E, 0);
  {
    std::queue<int> q;
    q.push(0);
    depth[0] = 0;
    while (!q.empty()) {
      const int t = q.front();
      q.pop();
      for (const Side& s : mesh.triangles()[t].sides) {
        if (in_tree[s.edge]) continue;
        const auto [t0, t1] = mesh.edge_triangles(s.edge);
        const int u = t0 == t ? t1 : t0;
        if (depth[u] == -1) {
          depth[u] = depth[t] + 1;
          dual_parent[u] = t;
          dual_parent_edge[u] = s.edge;
          in_cotree[s.edge] = 1;
          q.push(u);
        }
      }
    }
  }

  std::vector<int> leftover;
  for (int e = 0; e < E; ++e) {
    if (!in_tree[e] && !in_cotree[e]) leftover.push_back(e);
  }
  rank_ = static_cast<int>(leftover.size());
  if (rank_ != 2 * mesh.genus()) {
    fail(ErrorKind::Internal, "tree-cotree leftover count is not 2g");
  }
  words_ = std::max(1, (rank_ + 63) / 64);
  classes_.assign(static_cast<std::size_t>(E) * words_, 0);

  for (int i = 0; i < rank_; ++i) {
    const int e = leftover[i];
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    const int word = i / 64;
    auto mark = [&](int edge) {
      classes_[static_cast<std::size_t>(edge) * words_ + word] ^= bit;
    };
    mark(e);
    auto [a, b] = mesh.edge_triangles(e);
    while (depth[a] > depth[b]) { mark(dual_parent_edge[a]); a = dual_parent[a]; }
    while (depth[b] > depth[a]) { mark(dual_parent_edge[b]); b = dual_parent[b]; }
    while (a != b) {
      mark(dual_parent_edge[a]);
      mark(dual_parent_edge[b]);
      a = dual_parent[a];
      b = dual_parent[b];
    }
  }
}

bool HomologyBasis::trivial(const std::vector<int>& cycle_edges) const {
  std::vector<std::uint64_t> acc(words_, 0);
  for (int e : cycle_edges) {
    const std::uint64_t* c = edge_class(e);
    for (int w = 0; w < words_; ++w) acc[w] ^= c[w];
  }
  return std::all_of(acc.begin(), acc.end(), [](std::uint64_t x) { return x == 0; });
}

CycleWitness shortest_nontrivial_cycle(const Mesh& mesh, int max_roots) {
  const HomologyBasis basis(mesh);
  const int V = mesh.vertex_count();
  const int W = basis.words();
  const Incidence inc = vertex_incidence(mesh);

  std::vector<int> roots;
  if (V <= max_roots) {
    for (int v = 0; v < V; ++v) roots.push_back(v);
  } else {
    // Refinement appends vertices, so the coarse vertices keep ids 0..3n-1.
    const int coarse = std::min(V, 3 * mesh.pants_count());
    for (int v = 0; v < coarse; ++v) roots.push_back(v);
    const int extra = std::max(1, max_roots - coarse);
    const int stride = std::max(1, (V - coarse) / extra);
    for (int v = coarse; v < V; v += stride) roots.push_back(v);
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  CycleWitness best;
  best.length = inf;
  int best_edge = -1;

  std::vector<double> dist(V);
  std::vector<int> parent_edge(V);
  std::vector<char> settled(V);
  std::vector<std::uint64_t> cls(static_cast<std::size_t>(V) * W);

  using Item = std::pair<double, int>;
  for (int root : roots) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(parent_edge.begin(), parent_edge.end(), -1);
    std::fill(settled.begin(), settled.end(), 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[root] = 0.0;
    std::fill_n(cls.begin() + static_cast<std::size_t>(root) * W, W, 0);
    pq.push({0.0, root});
    int root_best_edge = -1;
    double root_best = best.length;
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (settled[u] || d > dist[u]) continue;
      if (2.0 * d >= root_best) break;
      settled[u] = 1;
      if (parent_edge[u] != -1) {
        const MeshEdge& pe = mesh.edges()[parent_edge[u]];
        const int p = other_end(pe, u);
        const std::uint64_t* ec = basis.edge_class(parent_edge[u]);
        for (int w = 0; w < W; ++w) {
          cls[static_cast<std::size_t>(u) * W + w] =
              cls[static_cast<std::size_t>(p) * W + w] ^ ec[w];
        }
      }
      for (int i = inc.offset[u]; i < inc.offset[u + 1]; ++i) {
        const int e = inc.edge[i];
        const MeshEdge& ed = mesh.edges()[e];
        const int v = other_end(ed, u);
        if (settled[v] && e != parent_edge[u] && e != parent_edge[v]) {
          // Closed walk root -> u -> v -> root.
          const std::uint64_t* ec = basis.edge_class(e);
          bool nontrivial = false;
          for (int w = 0; w < W; ++w) {
            if ((cls[static_cast<std::size_t>(u) * W + w] ^
                 cls[static_cast<std::size_t>(v) * W + w] ^ ec[w]) != 0) {
              nontrivial = true;
            }
          }
          const double len = dist[u] + dist[v] + ed.length;
          if (nontrivial && len < root_best) {
            root_best = len;
            root_best_edge = e;
          }
        } else if (!settled[v] && d + ed.length < dist[v]) {
          dist[v] = d + ed.length;
          parent_edge[v] = e;
          pq.push({dist[v], v});
        }
      }
    }
    if (root_best_edge != -1 && root_best < best.length) {
      best.length = root_best;
      best.root = root;
      best_edge = root_best_edge;
      // Reconstruct the walk while this root's tree is still in place.
      best.edges.clear();
      const MeshEdge& ce = mesh.edges()[best_edge];
      for (int x : {ce.v0, ce.v1}) {
        while (parent_edge[x] != -1) {
          best.edges.push_back(parent_edge[x]);
          x = other_end(mesh.edges()[parent_edge[x]], x);
        }
      }
      best.edges.push_back(best_edge);
    }
  }
  if (best_edge == -1) {
    fail(ErrorKind::Internal, "no homologically nontrivial cycle found");
  }
  return best;
}

double systole_upper_bound(const Mesh& mesh) {
  return shortest_nontrivial_cycle(mesh).length;
}

}  // namespace hypspec
