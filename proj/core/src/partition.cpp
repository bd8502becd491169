#include "hypspec/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "hypspec/error.hpp"

namespace hypspec {

BoundedGraph::BoundedGraph(int vertex_count, std::span<const std::pair<int, int>> edges) {
  if (vertex_count < 0) fail(ErrorKind::Precondition, "negative vertex count");
  adjacency_.assign(vertex_count, {});
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) {
      fail(ErrorKind::Precondition, "edge endpoint out of range");
    }
    if (a == b) fail(ErrorKind::Precondition, "graph has a loop at " + std::to_string(a));
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  for (int v = 0; v < vertex_count; ++v) {
    auto& nb = adjacency_[v];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      fail(ErrorKind::Precondition, "graph has a multi-edge at " + std::to_string(v));
    }
    if (nb.size() > 3) {
      fail(ErrorKind::Precondition,
           "vertex " + std::to_string(v) + " has degree " + std::to_string(nb.size()));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (vertex_count > 0) {
    std::vector<char> seen(vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adjacency_[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    if (count != vertex_count) fail(ErrorKind::Precondition, "graph is disconnected");
  }
}

bool BoundedGraph::has_edge(int a, int b) const {
  const auto& nb = adjacency_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

BoundedGraph to_bounded_graph(const TrigonGraph& graph) {
  std::vector<std::pair<int, int>> edges;
  for (const TrigonEdge& e : graph.edges) edges.emplace_back(e.a, e.b);
  return BoundedGraph(graph.size(), edges);
}

namespace {

std::vector<std::pair<int, int>> bfs_tree(const BoundedGraph& g) {
  std::vector<std::pair<int, int>> tree;
  if (g.size() == 0) return tree;
  std::vector<char> seen(g.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        tree.emplace_back(u, w);
        q.push(w);
      }
    }
  }
  return tree;
}

}  // namespace

Partition partition_bounded(const BoundedGraph& graph, int k) {
  const auto tree = bfs_tree(graph);
  return partition_bounded(graph, tree, k);
}

Partition partition_bounded(const BoundedGraph& graph,
                            std::span<const std::pair<int, int>> spanning_tree, int k) {
  if (k < 0 || k > 30) fail(ErrorKind::Domain, "k must be in [0, 30]");
  const int n = graph.size();
  if (static_cast<int>(spanning_tree.size()) != std::max(0, n - 1)) {
    fail(ErrorKind::Precondition, "spanning tree must have n - 1 edges");
  }
  std::vector<std::vector<int>> tree(n);
  for (auto [a, b] : spanning_tree) {
    if (a < 0 || b < 0 || a >= n || b >= n || !graph.has_edge(a, b)) {
      fail(ErrorKind::Precondition, "spanning tree edge is not a graph edge");
    }
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  for (auto& nb : tree) std::sort(nb.begin(), nb.end());

  const long long lo = 1LL << k;
  Partition out;
  out.k = k;
  std::vector<char> alive(n, 1);
  int alive_count = n;
  std::vector<int> parent(n), size(n), order;
  order.reserve(n);

  auto alive_degree = [&](int v) {
    int d = 0;
    for (int w : tree[v]) d += alive[w];
    return d;
  };

  while (alive_count >= lo) {
    // Root at the lowest-index leaf of the remaining tree.
    int root = -1;
    for (int v = 0; v < n && root == -1; ++v) {
      if (alive[v] && alive_degree(v) <= 1) root = v;
    }
    if (root == -1) fail(ErrorKind::Precondition, "spanning tree has a cycle");

    // Subtree sizes by a preorder walk, accumulated in reverse.
    order.clear();
    parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (int w : tree[u]) {
        if (alive[w] && w != parent[u]) {
          parent[w] = u;
          stack.push_back(w);
        }
      }
    }
    if (static_cast<int>(order.size()) != alive_count) {
      fail(ErrorKind::Precondition, "spanning tree does not span the graph");
    }
    for (int u : order) size[u] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (parent[*it] != -1) size[parent[*it]] += size[*it];
    }

    // Spine: follow the child with more descendants, lower index on ties.
    std::vector<int> spine{root};
    for (;;) {
      const int u = spine.back();
      int best = -1;
      for (int w : tree[u]) {
        if (!alive[w] || w == parent[u]) continue;
        if (best == -1 || size[w] > size[best]) best = w;
      }
      if (best == -1) break;
      spine.push_back(best);
    }

    // Walking up the spine the size at most doubles plus one per step, so the
    // first vertex reaching 2^k is still below 2^{k+1}.
    int cut = -1;
    for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
      if (size[*it] >= lo) {
        cut = *it;
        break;
      }
    }
    if (cut == -1 || size[cut] > 2 * lo - 1) {
      fail(ErrorKind::Internal, "spine scan found no subtree in the size window");
    }

    std::vector<int> block;
    stack.assign(1, cut);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      block.push_back(u);
      for (int w : tree[u]) {
        if (alive[w] && w != parent[u]) stack.push_back(w);
      }
    }
    for (int u : block) alive[u] = 0;
    alive_count -= static_cast<int>(block.size());
    std::sort(block.begin(), block.end());
    out.blocks.push_back(std::move(block));
  }
  for (int v = 0; v < n; ++v) {
    if (alive[v]) out.remainder.push_back(v);
  }
  return out;
}

int choose_k(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 2.0)) {
    std::ostringstream os;
    os << "epsilon must lie in (0, 2], got " << epsilon;
    fail(ErrorKind::Domain, os.str());
  }
  const double x = 8.0 * std::numbers::pi / (kTrigonMinArea * epsilon);
  int exponent = 0;
  std::frexp(x, &exponent);  // x = f * 2^exponent, f in [0.5, 1)
  return exponent;
}

}  // namespace hypspec
