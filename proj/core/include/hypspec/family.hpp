#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "hypspec/eigensolver.hpp"
#include "hypspec/mesh.hpp"
#include "hypspec/surface_spec.hpp"

namespace hypspec {

/// 2k pants P_1..P_2k with unit cuffs, chained as
///   gamma_2, gamma_3 of P_{2j-1} to those of P_{2j}   (j = 1..k)
///   gamma_1 of P_{2j}   to gamma_1 of P_{2j+1}         (j = 1..k-1)
/// leaving gamma_1 of P_1 and of P_2k open. Pants index = position - 1.
struct QBlock {
  int k = 0;
  SurfaceSpec spec;  // not closed: two cuffs stay free
  std::array<CuffRef, 2> open{};

  /// Euler characteristic of the bordered surface, -(pants count).
  int euler_characteristic() const { return -static_cast<int>(spec.pants.size()); }
};

/// Throws Error(Domain) when k < 1.
QBlock build_q_block(int k, double twist = 0.0);

/// l copies of the Q block closed up cyclically: the free gamma_1 of P_2k in
/// copy i is glued to the free gamma_1 of P_1 in copy (i + 1) mod l. Genus is
/// kl + 1. Pants P_position of copy c has index c*2k + position - 1.
SurfaceSpec build_prop1_surface(int k, int l, double twist = 0.0);

int prop1_pants_index(int k, int copy, int position);

/// Test function supported on one copy of the Q block. Interface j between
/// P_j and P_{j+1} (j = 0..2k, the ends being the free cuffs) sits at height
/// min(j, 2k - j); each pants ramps linearly between its two interface
/// heights by normalized hop distance to its entry cuffs. Zero elsewhere.
///
/// Throws Error(InvalidInput) if the mesh does not carry the pants and cuff
/// provenance of a Q-block family with this k, or copy is out of range.
Eigen::VectorXd staircase_function(const Mesh& mesh, int k, int copy);

/// One staircase per copy; supports are disjoint.
std::vector<Eigen::VectorXd> prop1_test_functions(const Mesh& mesh, int k, int l);

/// Least-squares slope of log(y) against log(x). Requires two or more points
/// with positive coordinates and distinct x.
double fit_loglog_exponent(const std::vector<double>& x, const std::vector<double>& y);

struct SharpnessRow {
  int k = 0;
  double upper = 0.0;   // minimax bound over the l staircases
  double lambda = 0.0;  // lambda_{l-1} of the discrete pencil
  int vertices = 0;
};

struct SharpnessReport {
  int l = 0;
  std::vector<SharpnessRow> rows;
  double fit_upper_exponent = 0.0;
  std::optional<double> fit_lambda_exponent;  // absent when l = 1
  double twist = 0.0;
};

struct SharpnessOptions {
  EigenOptions eigen;
  double twist = 0.0;
};

/// Meshes each member of the family at h_max, evaluates the upper bound U(k)
/// and the eigenvalue lambda_{l-1}(k). Members are processed concurrently.
/// Needs at least one k; exponents are fitted when two or more distinct k
/// are given.
SharpnessReport verify_sharpness(const std::vector<int>& k_list, int l, double h_max,
                                 const SharpnessOptions& options = {});

nlohmann::json to_json(const SharpnessReport& report);

/// Columns k, upper, lambda.
void write_sharpness_tsv(std::ostream& out, const SharpnessReport& report);

}  // namespace hypspec
