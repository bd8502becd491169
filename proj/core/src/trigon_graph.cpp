#include "hypspec/trigon_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <utility>

#include "hypspec/error.hpp"

namespace hypspec {

namespace {

TrigonGraph from_pairs(std::vector<double> area,
                       const std::map<std::pair<int, int>, double>& shared) {
  TrigonGraph g;
  g.area = std::move(area);
  g.adjacency.assign(g.area.size(), {});
  for (const auto& [key, len] : shared) {
    g.edges.push_back({key.first, key.second, len});
    g.adjacency[key.first].push_back(key.second);
    g.adjacency[key.second].push_back(key.first);
  }
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  return g;
}

}  // namespace

int TrigonGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& nb : adjacency) d = std::max(d, nb.size());
  return static_cast<int>(d);
}

bool TrigonGraph::connected() const {
  if (area.empty()) return true;
  std::vector<char> seen(area.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == area.size();
}

TrigonGraph trigon_graph(const Mesh& mesh, TrigonLevel level) {
  const bool coarse = level == TrigonLevel::Coarse;
  auto cell_of = [&](int t) {
    return coarse ? mesh.triangles()[t].tag.coarse_cell : t;
  };
  std::vector<double> area;
  if (coarse) {
    area.assign(mesh.coarse_cell_areas().begin(), mesh.coarse_cell_areas().end());
  } else {
    for (const MeshTriangle& t : mesh.triangles()) area.push_back(t.area);
  }
  std::map<std::pair<int, int>, double> shared;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const auto [t0, t1] = mesh.edge_triangles(e);
    const int a = cell_of(t0);
    const int b = cell_of(t1);
    if (a == b) continue;
    shared[{std::min(a, b), std::max(a, b)}] += mesh.edges()[e].length;
  }
  TrigonGraph g = from_pairs(std::move(area), shared);
  if (!g.connected()) {
    fail(ErrorKind::Internal, "trigon graph of a closed surface is disconnected");
  }
  return g;
}

TrigonGraph induced_subgraph(const TrigonGraph& graph, const std::vector<int>& cells) {
  std::vector<int> local(graph.size(), -1);
  std::vector<double> area;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const int c = cells[i];
    if (c < 0 || c >= graph.size() || local[c] != -1) {
      fail(ErrorKind::Precondition, "cell list has an invalid or repeated cell");
    }
    local[c] = static_cast<int>(i);
    area.push_back(graph.area[c]);
  }
  std::map<std::pair<int, int>, double> shared;
  for (const TrigonEdge& e : graph.edges) {
    const int a = local[e.a];
    const int b = local[e.b];
    if (a < 0 || b < 0) continue;
    shared[{std::min(a, b), std::max(a, b)}] += e.length;
  }
  return from_pairs(std::move(area), shared);
}

}  // namespace hypspec
