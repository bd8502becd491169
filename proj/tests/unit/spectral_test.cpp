#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "hypspec/eigensolver.hpp"
#include "hypspec/error.hpp"
#include "hypspec/family.hpp"
#include "hypspec/spectral.hpp"

using namespace hypspec;

namespace {

Mesh genus2_mesh(int levels) {
  Mesh m = coarse_mesh(assemble(build_prop1_surface(1, 1)));
  for (int i = 0; i < levels; ++i) m = m.refined();
  return m;
}

// P1 stiffness from explicit planar coordinates: area * grad(phi_i) . grad(phi_j).
std::array<std::array<double, 3>, 3> coordinate_stiffness(double a, double b, double c) {
  // Corner 0 at the origin, corner 1 on the x axis; side k is opposite corner k.
  const double x2 = (b * b + c * c - a * a) / (2 * c);
  const Eigen::Vector2d p[3] = {{0, 0}, {c, 0}, {x2, std::sqrt(b * b - x2 * x2)}};
  Eigen::Matrix3d A;
  for (int i = 0; i < 3; ++i) A.row(i) << 1.0, p[i].x(), p[i].y();
  const Eigen::Matrix3d coeff = A.inverse();  // column j: phi_j = c0 + c1 x + c2 y
  const double area = 0.5 * std::abs((p[1] - p[0]).x() * (p[2] - p[0]).y() -
                                     (p[1] - p[0]).y() * (p[2] - p[0]).x());
  std::array<std::array<double, 3>, 3> K{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      K[i][j] = area * coeff.block<2, 1>(1, i).dot(coeff.block<2, 1>(1, j));
    }
  }
  return K;
}

}  // namespace

TEST(LocalStiffness, MatchesCoordinateIntegration) {
  const double s = std::log(4.0);
  std::vector<hypgeom::TriangleSides> cases{{s, s, s}, {1, 1, 1}, {0.3, 0.4, 0.5}, {2.0, 1.2, 1.1}};
  for (const auto& t : cases) {
    const auto K = local_stiffness(t);
    const auto R = coordinate_stiffness(t.a, t.b, t.c);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(K[i][j], R[i][j], 1e-10);
    }
  }
}

TEST(LocalStiffness, SliverIsAMeshQualityError) {
  try {
    local_stiffness({1.0, 1e-8, 1.0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MeshQuality);
  }
}

TEST(AssembleFem, KernelSymmetryAndMassTrace) {
  const Mesh m = genus2_mesh(3);
  const SpectralPair p = assemble_fem(m);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(p.size());
  EXPECT_LT((p.stiffness * one).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ((Eigen::SparseMatrix<double>(p.stiffness.transpose()) - p.stiffness).norm(), 0.0);
  EXPECT_LT(std::abs(p.mass.sum() - 4 * std::numbers::pi) / (4 * std::numbers::pi), 1e-9);
  EXPECT_GT(p.mass.minCoeff(), 0.0);
}

TEST(AssembleFem, StiffnessIsPositiveSemidefinite) {
  const SpectralPair p = assemble_fem(genus2_mesh(2));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd f(p.size());
    for (int j = 0; j < f.size(); ++j) f[j] = n01(rng);
    EXPECT_GE(f.dot(p.stiffness * f), -1e-10 * f.squaredNorm());
  }
}

TEST(AssembleFem, SubdomainPencil) {
  const Mesh m = genus2_mesh(1);
  std::vector<int> tris;
  for (int t = 0; t < m.triangle_count(); ++t) {
    if (m.triangles()[t].tag.pants == 0) tris.push_back(t);
  }
  std::vector<int> vmap;
  const SpectralPair sub = assemble_fem(m, tris, &vmap);
  EXPECT_EQ(sub.size(), static_cast<int>(vmap.size()));
  EXPECT_NEAR(sub.mass.sum(), 2 * std::numbers::pi, 1e-9);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(sub.size());
  EXPECT_LT((sub.stiffness * one).cwiseAbs().maxCoeff(), 1e-10);
  const std::vector<int> bad{m.triangle_count()};
  EXPECT_THROW(assemble_fem(m, bad, &vmap), Error);
}

TEST(Rayleigh, ConstantsAndEigenvectors) {
  const SpectralPair p = assemble_fem(genus2_mesh(2));
  EXPECT_NEAR(rayleigh(p, Eigen::VectorXd::Constant(p.size(), 3.0)), 0.0, 1e-12);
  EXPECT_THROW(rayleigh(p, Eigen::VectorXd::Zero(p.size())), Error);
  EXPECT_THROW(rayleigh(p, Eigen::VectorXd::Ones(3)), Error);
  const Spectrum s = lowest_eigs(p, 3);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(rayleigh(p, s.eigenvectors.col(j)), s.eigenvalues[j], 1e-8 * std::max(1.0, s.eigenvalues[j]));
  }
}

TEST(Rayleigh, StaircaseMatchesDirectProducts) {
  const Mesh m = triangulate(assemble(build_prop1_surface(3, 1)), 0.6);
  const SpectralPair p = assemble_fem(m);
  const Eigen::VectorXd f = staircase_function(m, 3, 0);
  double num = 0, den = 0;
  for (int t = 0; t < m.triangle_count(); ++t) {
    const auto K = local_stiffness(m.sides(t));
    const auto& c = m.triangles()[t].corners;
    for (int i = 0; i < 3; ++i) {
      den += m.triangles()[t].area / 3 * f[c[i]] * f[c[i]];
      for (int j = 0; j < 3; ++j) num += f[c[i]] * K[i][j] * f[c[j]];
    }
  }
  EXPECT_NEAR(rayleigh(p, f), num / den, 1e-12);
  EXPECT_LT(rayleigh(p, f), 1.0);
}

TEST(Minimax, ConstantGivesZero) {
  const SpectralPair p = assemble_fem(genus2_mesh(2));
  EXPECT_NEAR(minimax_upper_bound(p, {Eigen::VectorXd::Ones(p.size())}), 0.0, 1e-12);
  EXPECT_THROW(minimax_upper_bound(p, {}), Error);
}

TEST(Minimax, DisjointBumpsBoundLambdaOne) {
  const Mesh m = genus2_mesh(3);
  const SpectralPair p = assemble_fem(m);
  // Indicator-like functions on the interior vertices of each pants.
  std::vector<Eigen::VectorXd> fs(2, Eigen::VectorXd::Zero(p.size()));
  std::vector<int> owner(m.vertex_count(), -1);
  for (const MeshTriangle& t : m.triangles()) {
    for (int v : t.corners) owner[v] = owner[v] == -1 || owner[v] == t.tag.pants ? t.tag.pants : 2;
  }
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (owner[v] == 0 || owner[v] == 1) fs[owner[v]][v] = 1.0;
  }
  const double u = minimax_upper_bound(p, fs);
  EXPECT_DOUBLE_EQ(u, std::max(rayleigh(p, fs[0]), rayleigh(p, fs[1])));
  EXPECT_GE(u, lowest_eigs(p, 2).eigenvalues[1]);

  std::vector<Eigen::VectorXd> overlap{fs[0], fs[0] + fs[1]};
  EXPECT_THROW(minimax_upper_bound(p, overlap), Error);
}

TEST(Minimax, RandomOrthogonalSetsBoundTheEigenvalue) {
  const SpectralPair p = assemble_fem(genus2_mesh(2));
  const Spectrum s = lowest_eigs(p, 6);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  for (int l = 1; l <= 6; ++l) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Eigen::VectorXd> fs;
      for (int j = 0; j < l; ++j) {
        Eigen::VectorXd f(p.size());
        for (int i = 0; i < f.size(); ++i) f[i] = n01(rng);
        for (const auto& g : fs) f -= (g.dot(p.mass.cwiseProduct(f)) / g.dot(p.mass.cwiseProduct(g))) * g;
        fs.push_back(f);
      }
      EXPECT_GE(minimax_upper_bound(p, fs), s.eigenvalues[l - 1] * (1 - 1e-9));
    }
  }
}

TEST(Bracketing, Arithmetic) {
  const std::vector<double> three{0.2, 0.3, 0.5};
  EXPECT_NEAR(bracketing_lower_bound(three), 0.01, 1e-15);
  const std::vector<double> one{0.7};
  EXPECT_DOUBLE_EQ(bracketing_lower_bound(one), 0.49 / 4);
  EXPECT_THROW(bracketing_lower_bound(std::vector<double>{}), Error);
  EXPECT_THROW(bracketing_lower_bound(std::vector<double>{-0.1}), Error);
}

TEST(Gradient, ConstantHasNone) {
  const Mesh m = genus2_mesh(1);
  EXPECT_EQ(max_gradient(m, Eigen::VectorXd::Constant(m.vertex_count(), 2.0)), 0.0);
}
