#include "hypspec/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hypspec/error.hpp"
#include "hypspec/partition.hpp"
#include "hypspec/trigon_graph.hpp"

namespace hypspec {

const char* to_string(CertificateBranch branch) {
  return branch == CertificateBranch::Small ? "small" : "large";
}

bool Certificate::exact() const {
  return std::all_of(pieces.begin(), pieces.end(), [](const CertifiedPiece& p) {
    return p.cheeger.method == CheegerMethod::Exact;
  });
}

int target_index(double epsilon, int genus) {
  const double x = epsilon * genus;
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) return static_cast<int>(r);
  return static_cast<int>(std::ceil(x));
}

Certificate certify_theorem1(const Surface& surface, const Mesh& mesh, double epsilon,
                             const CertifyOptions& options) {
  if (!(epsilon > 0.0 && epsilon <= 2.0)) {
    fail(ErrorKind::Domain, "epsilon must lie in (0, 2]");
  }
  if (mesh.genus() != surface.genus || mesh.pants_count() != surface.pants_count()) {
    fail(ErrorKind::Precondition, "mesh was not built from this surface");
  }

  Certificate cert;
  cert.epsilon = epsilon;
  cert.genus = surface.genus;
  cert.target_index = target_index(epsilon, surface.genus);

  const TrigonGraph graph = trigon_graph(mesh, TrigonLevel::Coarse);
  cert.min_cell_area = *std::min_element(graph.area.begin(), graph.area.end());

  std::vector<std::vector<int>> pieces;
  if (cert.target_index <= 1) {
    cert.branch = CertificateBranch::Small;
    std::vector<int> all(graph.size());
    std::iota(all.begin(), all.end(), 0);
    pieces.push_back(std::move(all));
  } else {
    cert.branch = CertificateBranch::Large;
    cert.k = choose_k(epsilon);
    const Partition part = partition_bounded(to_bounded_graph(graph), cert.k);
    cert.alpha = part.alpha();
    pieces = part.blocks;
    if (!part.remainder.empty()) pieces.push_back(part.remainder);
    cert.conforming = cert.alpha + 1 <= cert.target_index;
  }
  cert.alpha_bound = mesh.total_area() / (std::ldexp(1.0, cert.k) * cert.min_cell_area);

  double min_h = std::numeric_limits<double>::infinity();
  for (std::vector<int>& cells : pieces) {
    CertifiedPiece piece;
    for (int c : cells) piece.area += graph.area[c];
    piece.cheeger = discrete_cheeger(mesh, cells, options.exact_limit, options.eigen);
    piece.cells = std::move(cells);
    min_h = std::min(min_h, piece.cheeger.value);
    cert.pieces.push_back(std::move(piece));
  }
  cert.lower_bound = min_h * min_h / 4.0;
  return cert;
}

namespace {

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const CertifiedPiece& p : cert.pieces) {
    blocks.push_back({{"size", p.cells.size()},
                      {"area", p.area},
                      {"cheeger",
                       {{"value", number_or_null(p.cheeger.value)},
                        {"method", to_string(p.cheeger.method)}}}});
  }
  return {{"epsilon", cert.epsilon},
          {"genus", cert.genus},
          {"k", cert.k},
          {"alpha", cert.alpha},
          {"branch", to_string(cert.branch)},
          {"blocks", std::move(blocks)},
          {"lower_bound", number_or_null(cert.lower_bound)},
          {"target_index", cert.target_index},
          {"conforming", cert.conforming},
          {"min_cell_area", cert.min_cell_area},
          {"alpha_bound", cert.alpha_bound}};
}

}  // namespace hypspec
