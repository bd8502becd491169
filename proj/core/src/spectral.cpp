#include "hypspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hypspec/error.hpp"

namespace hypspec {

namespace {

// Kahan's stable Heron formula.
double euclidean_area(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(p, 0.0));
}

struct Triplets {
  std::vector<Eigen::Triplet<double>> items;
  void add(int i, int j, double v) { items.emplace_back(i, j, v); }
};

void accumulate(const Mesh& mesh, int t, const std::vector<int>& local,
                Triplets& stiff, Eigen::VectorXd& mass) {
  const MeshTriangle& tri = mesh.triangles()[t];
  const auto K = local_stiffness(mesh.sides(t));
  std::array<int, 3> idx{};
  for (int k = 0; k < 3; ++k) idx[k] = local[tri.corners[k]];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) stiff.add(idx[i], idx[j], K[i][j]);
    mass[idx[i]] += tri.area / 3.0;
  }
}

}  // namespace

std::array<std::array<double, 3>, 3> local_stiffness(const hypgeom::TriangleSides& sides) {
  const std::array<double, 3> l{sides.a, sides.b, sides.c};
  const double area = euclidean_area(l[0], l[1], l[2]);
  std::array<double, 3> cot{};
  for (int k = 0; k < 3; ++k) {
    const double p = l[(k + 1) % 3];
    const double q = l[(k + 2) % 3];
    const double num = p * p + q * q - l[k] * l[k];
    const double angle = std::atan2(4.0 * area, num);
    if (!(angle >= kMinSecantAngle)) {
      std::ostringstream os;
      os.precision(17);
      os << "secant triangle (" << l[0] << ", " << l[1] << ", " << l[2]
         << ") has angle " << angle << " below " << kMinSecantAngle;
      fail(ErrorKind::MeshQuality, os.str());
    }
    cot[k] = num / (4.0 * area);
  }
  std::array<std::array<double, 3>, 3> K{};
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    const double w = 0.5 * cot[k];
    K[i][j] -= w;
    K[j][i] -= w;
    K[i][i] += w;
    K[j][j] += w;
  }
  return K;
}

SpectralPair assemble_fem(const Mesh& mesh) {
  const int n = mesh.vertex_count();
  std::vector<int> identity(n);
  for (int i = 0; i < n; ++i) identity[i] = i;
  SpectralPair pair;
  pair.mass = Eigen::VectorXd::Zero(n);
  Triplets stiff;
  stiff.items.reserve(9 * static_cast<std::size_t>(mesh.triangle_count()));
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    accumulate(mesh, t, identity, stiff, pair.mass);
  }
  pair.stiffness.resize(n, n);
  pair.stiffness.setFromTriplets(stiff.items.begin(), stiff.items.end());
  pair.stiffness.makeCompressed();
  return pair;
}

SpectralPair assemble_fem(const Mesh& mesh, std::span<const int> triangles,
                          std::vector<int>* vertex_map) {
  std::vector<int> local(mesh.vertex_count(), -1);
  std::vector<int> global;
  for (int t : triangles) {
    if (t < 0 || t >= mesh.triangle_count()) {
      fail(ErrorKind::InvalidInput, "triangle index out of range");
    }
    for (int c : mesh.triangles()[t].corners) {
      if (local[c] == -1) {
        local[c] = static_cast<int>(global.size());
        global.push_back(c);
      }
    }
  }
  SpectralPair pair;
  const int n = static_cast<int>(global.size());
  pair.mass = Eigen::VectorXd::Zero(n);
  Triplets stiff;
  for (int t : triangles) accumulate(mesh, t, local, stiff, pair.mass);
  pair.stiffness.resize(n, n);
  pair.stiffness.setFromTriplets(stiff.items.begin(), stiff.items.end());
  pair.stiffness.makeCompressed();
  if (vertex_map) *vertex_map = std::move(global);
  return pair;
}

double rayleigh(const SpectralPair& pair, const Eigen::VectorXd& f) {
  if (f.size() != pair.size()) {
    fail(ErrorKind::InvalidInput, "vector length does not match the pencil");
  }
  const double den = f.dot(pair.mass.cwiseProduct(f));
  if (!(den > 0.0)) fail(ErrorKind::InvalidInput, "function has zero mass norm");
  return f.dot(pair.stiffness * f) / den;
}

double minimax_upper_bound(const SpectralPair& pair,
                           const std::vector<Eigen::VectorXd>& functions) {
  const int l = static_cast<int>(functions.size());
  if (l == 0) fail(ErrorKind::InvalidInput, "no test functions");
  Eigen::MatrixXd Sm(l, l), Mm(l, l);
  std::vector<Eigen::VectorXd> Sf(l), Mf(l);
  for (int i = 0; i < l; ++i) {
    if (functions[i].size() != pair.size()) {
      fail(ErrorKind::InvalidInput, "vector length does not match the pencil");
    }
    Sf[i] = pair.stiffness * functions[i];
    Mf[i] = pair.mass.cwiseProduct(functions[i]);
  }
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      Sm(i, j) = functions[i].dot(Sf[j]);
      Mm(i, j) = functions[i].dot(Mf[j]);
    }
    if (!(Mm(i, i) > 0.0)) {
      fail(ErrorKind::InvalidInput,
           "test function " + std::to_string(i) + " has zero mass norm");
    }
  }
  for (int i = 0; i < l; ++i) {
    for (int j = i + 1; j < l; ++j) {
      if (std::abs(Mm(i, j)) > 1e-12 * std::sqrt(Mm(i, i) * Mm(j, j))) {
        std::ostringstream os;
        os << "test functions " << i << " and " << j
           << " are not mass-orthogonal (cross term " << Mm(i, j) << ")";
        fail(ErrorKind::InvalidInput, os.str());
      }
    }
  }
  // Normalize and drop the (already negligible) mass cross terms.
  Eigen::VectorXd scale = Mm.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd H = scale.asDiagonal() * Sm * scale.asDiagonal();
  H = 0.5 * (H + H.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(l - 1);
}

double bracketing_lower_bound(std::span<const double> cheeger_values) {
  if (cheeger_values.empty()) {
    fail(ErrorKind::InvalidInput, "bracketing bound needs at least one piece");
  }
  double h = std::numeric_limits<double>::infinity();
  for (double v : cheeger_values) {
    if (std::isnan(v) || v < 0.0) {
      fail(ErrorKind::InvalidInput, "Cheeger values must be non-negative");
    }
    h = std::min(h, v);
  }
  return h * h / 4.0;
}

double max_gradient(const Mesh& mesh, const Eigen::VectorXd& f) {
  if (f.size() != mesh.vertex_count()) {
    fail(ErrorKind::InvalidInput, "vector length does not match the mesh");
  }
  double g = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const hypgeom::TriangleSides s = mesh.sides(t);
    const auto K = local_stiffness(s);
    const auto& c = mesh.triangles()[t].corners;
    // Rows of K sum to zero, so shifting by f at corner 0 leaves the energy
    // unchanged and avoids cancellation for nearly constant f.
    const double d1 = f[c[1]] - f[c[0]];
    const double d2 = f[c[2]] - f[c[0]];
    const double energy = K[1][1] * d1 * d1 + 2.0 * K[1][2] * d1 * d2 + K[2][2] * d2 * d2;
    const double area = euclidean_area(s.a, s.b, s.c);
    g = std::max(g, std::sqrt(std::max(energy, 0.0) / area));
  }
  return g;
}

}  // namespace hypspec
