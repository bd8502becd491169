#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypspec/cheeger.hpp"
#include "hypspec/eigensolver.hpp"
#include "hypspec/mesh.hpp"
#include "hypspec/surface_spec.hpp"

namespace hypspec {

struct CertifyOptions {
  int exact_limit = kDefaultExactLimit;
  EigenOptions eigen;
};

enum class CertificateBranch { Small, Large };

const char* to_string(CertificateBranch branch);

struct CertifiedPiece {
  std::vector<int> cells;  // coarse cells
  double area = 0.0;
  CheegerEstimate cheeger;
};

/// Lower bound for lambda_{ceil(eps g)} from a connected subdivision of the
/// surface into pieces of coarse cells and their discrete Cheeger constants.
///
/// Small branch (eps*g <= 1): the whole surface is one piece and the target
/// is lambda_1. Large branch: the coarse trigon graph is partitioned into
/// alpha blocks of 2^k..2^{k+1}-1 cells plus the remainder (when non-empty).
struct Certificate {
  double epsilon = 0.0;
  int genus = 0;
  int k = 0;
  int alpha = 0;
  CertificateBranch branch = CertificateBranch::Small;
  std::vector<CertifiedPiece> pieces;
  double lower_bound = 0.0;
  int target_index = 1;
  /// alpha + 1 <= target_index (always true in the small branch).
  bool conforming = true;
  double min_cell_area = 0.0;
  /// |surface| / (2^k * min_cell_area), the a priori bound on alpha.
  double alpha_bound = 0.0;

  /// True when every piece's Cheeger value is exact.
  bool exact() const;
};

/// ceil(eps * g), treating products within 1e-12 (relative) of an integer as
/// that integer.
int target_index(double epsilon, int genus);

/// Throws Error(Domain) unless 0 < epsilon <= 2.
Certificate certify_theorem1(const Surface& surface, const Mesh& mesh, double epsilon,
                             const CertifyOptions& options = {});

nlohmann::json to_json(const Certificate& certificate);

}  // namespace hypspec
