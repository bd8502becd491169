#pragma once

#include <vector>

#include "hypspec/mesh.hpp"

namespace hypspec {

/// Adjacency between two cells; `length` is the total length of the sides
/// they share.
struct TrigonEdge {
  int a = 0;
  int b = 0;
  double length = 0.0;
};

/// Cells of a triangulation with common-side adjacency.
struct TrigonGraph {
  std::vector<double> area;
  std::vector<TrigonEdge> edges;           // a < b, sorted
  std::vector<std::vector<int>> adjacency;  // sorted neighbour lists

  int size() const { return static_cast<int>(area.size()); }
  int max_degree() const;
  bool connected() const;
};

enum class TrigonLevel {
  Coarse,  // the eight pre-refinement triangles of each pants
  Fine,    // the mesh's own triangles
};

/// Throws Error(Internal) if the result is disconnected.
TrigonGraph trigon_graph(const Mesh& mesh, TrigonLevel level = TrigonLevel::Coarse);

/// The graph induced on `cells`, renumbered 0..cells.size()-1 in the given order.
TrigonGraph induced_subgraph(const TrigonGraph& graph, const std::vector<int>& cells);

}  // namespace hypspec
