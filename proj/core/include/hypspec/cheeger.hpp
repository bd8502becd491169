#pragma once

#include <vector>

#include "hypspec/eigensolver.hpp"
#include "hypspec/mesh.hpp"
#include "hypspec/trigon_graph.hpp"

namespace hypspec {

inline constexpr int kDefaultExactLimit = 20;

enum class CheegerMethod { Exact, Sweep };

const char* to_string(CheegerMethod method);

/// Discrete Cheeger ratio (cut length) / min(area(B), area(B')) over
/// bipartitions of a cell set into two connected halves.
///
/// Exact estimates minimize over every such bipartition. Sweep estimates
/// minimize over a restricted candidate family and therefore only bound the
/// exact value from above. A single cell admits no cut: value is +infinity.
struct CheegerEstimate {
  double value = 0.0;
  CheegerMethod method = CheegerMethod::Exact;
  std::vector<int> side;  // cells of B, as given in the input cell list
  double cut_length = 0.0;
  double smaller_area = 0.0;
};

/// Exhaustive search over connected bipartitions. Requires a connected graph
/// with at most 31 cells.
CheegerEstimate exact_cheeger(const TrigonGraph& cells);

/// Sweep over cells ordered by `score`, keeping cuts with both halves
/// connected, together with every edge cut of a BFS spanning tree.
CheegerEstimate sweep_cheeger(const TrigonGraph& cells, const std::vector<double>& score);

/// Cheeger estimate of the union of coarse cells `cells`. Uses exact search
/// when cells.size() <= exact_limit and otherwise sweeps the Fiedler vector of
/// the sub-domain's Neumann pencil.
CheegerEstimate discrete_cheeger(const Mesh& mesh, const std::vector<int>& cells,
                                 int exact_limit = kDefaultExactLimit,
                                 const EigenOptions& eigen = {});

}  // namespace hypspec
