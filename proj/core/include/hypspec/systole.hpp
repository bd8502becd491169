#pragma once

#include <cstdint>
#include <vector>

#include "hypspec/mesh.hpp"

namespace hypspec {

/// Z/2 homology classes of edge chains, via a tree-cotree decomposition.
///
/// Each of the 2g leftover edges closes a cycle in the dual spanning tree;
/// `edge_class(e)` records which of those dual cycles cross edge e. A closed
/// edge walk is homologically trivial iff the XOR of its edge classes is zero.
class HomologyBasis {
 public:
  explicit HomologyBasis(const Mesh& mesh);

  int rank() const { return rank_; }
  int words() const { return words_; }
  const std::uint64_t* edge_class(int edge) const {
    return classes_.data() + static_cast<std::size_t>(edge) * words_;
  }
  bool trivial(const std::vector<int>& cycle_edges) const;

 private:
  int rank_ = 0;
  int words_ = 1;
  std::vector<std::uint64_t> classes_;
};

struct CycleWitness {
  double length = 0.0;
  int root = -1;
  std::vector<int> edges;
};

/// Shortest homologically nontrivial closed edge walk through any of the
/// searched roots. Roots are every vertex when the mesh has at most
/// `max_roots` vertices; otherwise the coarse vertices plus an even stride.
CycleWitness shortest_nontrivial_cycle(const Mesh& mesh, int max_roots = 512);

/// Length of a non-separating mesh cycle: an upper bound on the systole, and
/// therefore on twice the injectivity radius.
double systole_upper_bound(const Mesh& mesh);

}  // namespace hypspec
