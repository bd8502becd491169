#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "hypspec/hypgeom.hpp"
#include "hypspec/mesh.hpp"

namespace hypspec {

/// Secant triangles with an angle below this are rejected as degenerate.
inline constexpr double kMinSecantAngle = 1e-6;

/// Piecewise-linear discretization of the Laplace-Beltrami operator: cotangent
/// stiffness on the Euclidean secant triangles, lumped mass from the
/// hyperbolic triangle areas.
struct SpectralPair {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;  // diagonal of the lumped mass matrix

  int size() const { return static_cast<int>(mass.size()); }
};

/// 3x3 P1 stiffness of the Euclidean triangle with the given side lengths.
/// Entry (i, j) couples corners i and j; side k is opposite corner k.
std::array<std::array<double, 3>, 3> local_stiffness(const hypgeom::TriangleSides& sides);

SpectralPair assemble_fem(const Mesh& mesh);

/// Neumann pencil of the sub-domain made of `triangles`. Vertices are
/// renumbered; `vertex_map` receives the mesh vertex of each local index.
SpectralPair assemble_fem(const Mesh& mesh, std::span<const int> triangles,
                          std::vector<int>* vertex_map);

/// f'Sf / f'Mf.
double rayleigh(const SpectralPair& pair, const Eigen::VectorXd& f);

/// Largest Rayleigh quotient over span(functions). The functions must be
/// pairwise mass-orthogonal; for disjointly supported functions this is the
/// largest individual quotient.
double minimax_upper_bound(const SpectralPair& pair,
                           const std::vector<Eigen::VectorXd>& functions);

/// min_j h_j^2 / 4 over the pieces of a subdivision.
double bracketing_lower_bound(std::span<const double> cheeger_values);

/// Largest |grad f| over the secant triangles of the mesh.
double max_gradient(const Mesh& mesh, const Eigen::VectorXd& f);

}  // namespace hypspec
