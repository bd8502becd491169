#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hypspec/trigon_graph.hpp"

namespace hypspec {

// Triangulation constants of the trigon construction this pipeline mirrors.
// They appear only in k-selection and in reports.
inline constexpr double kTrigonMinArea = 0.19;
inline constexpr double kTrigonMaxArea = 1.36;
inline constexpr double kTrigonMaxSide = 1.3862943611198906;  // log 4
inline constexpr double kHyperbolicPlaneCheeger = 1.0;

/// Finite, simple, connected, undirected graph with vertex degrees <= 3.
class BoundedGraph {
 public:
  /// Throws Error(Precondition) on loops, multi-edges, out-of-range ends,
  /// degree > 3 or disconnection.
  BoundedGraph(int vertex_count, std::span<const std::pair<int, int>> edges);

  int size() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int a, int b) const;

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
};

BoundedGraph to_bounded_graph(const TrigonGraph& graph);

/// Connected blocks of size in [2^k, 2^{k+1} - 1] plus a connected remainder
/// of size at most 2^k.
struct Partition {
  int k = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<int> remainder;

  int alpha() const { return static_cast<int>(blocks.size()); }
};

/// Partitions using a breadth-first spanning tree rooted at vertex 0.
Partition partition_bounded(const BoundedGraph& graph, int k);

/// Partitions along the given spanning tree (n - 1 edges of the graph).
Partition partition_bounded(const BoundedGraph& graph,
                            std::span<const std::pair<int, int>> spanning_tree, int k);

/// Smallest k with 2^k > 8*pi / (0.19*epsilon); then 2^k >= x >= 2^{k-1}
/// with ties at x = 2^m resolved to the larger k. Requires 0 < epsilon <= 2.
int choose_k(double epsilon);

}  // namespace hypspec
