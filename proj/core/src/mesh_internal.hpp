#pragma once

#include <vector>

#include "hypspec/mesh.hpp"

namespace hypspec {

// Reassembles a mesh from raw parts and checks its invariants.
Mesh mesh_from_parts(int vertex_count, int genus, int pants_count, int level,
                     std::vector<MeshEdge> edges,
                     std::vector<MeshTriangle> triangles,
                     std::vector<CuffLoop> loops,
                     std::vector<double> coarse_areas);

}  // namespace hypspec
