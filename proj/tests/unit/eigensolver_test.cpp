#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hypspec/eigensolver.hpp"
#include "hypspec/error.hpp"
#include "hypspec/family.hpp"

using namespace hypspec;

namespace {

Mesh genus2_mesh(int levels) {
  Mesh m = coarse_mesh(assemble(build_prop1_surface(1, 1)));
  for (int i = 0; i < levels; ++i) m = m.refined();
  return m;
}

EigenOptions iterative() {
  EigenOptions o;
  o.dense_threshold = 0;
  return o;
}

double coefficient_of_variation(const Eigen::VectorXd& v) {
  const double mean = v.mean();
  return std::sqrt((v.array() - mean).square().mean()) / std::abs(mean);
}

}  // namespace

TEST(LowestEigs, ConstantMode) {
  for (int k : {1, 2}) {
    const Mesh m = triangulate(assemble(build_prop1_surface(k, 2)), 0.5);
    const Spectrum s = lowest_eigs(assemble_fem(m), 1, iterative());
    EXPECT_LE(std::abs(s.eigenvalues[0]), 1e-8);
    EXPECT_LE(coefficient_of_variation(s.eigenvectors.col(0)), 1e-6);
    EXPECT_GT(s.eigenvectors.col(0).maxCoeff(), 0.0);
  }
}

TEST(LowestEigs, MatchesDenseSolve) {
  const SpectralPair p = assemble_fem(genus2_mesh(4));  // 2046 vertices
  ASSERT_LE(p.size(), 3000);
  const Spectrum it = lowest_eigs(p, 6, iterative());
  const Spectrum dense = dense_eigs(p);
  for (int j = 1; j <= 5; ++j) {
    EXPECT_LE(std::abs(it.eigenvalues[j] - dense.eigenvalues[j]) / dense.eigenvalues[j], 1e-8) << j;
  }
  for (double r : it.residuals) EXPECT_LE(r, 1e-8);
}

TEST(LowestEigs, SortedAndMassOrthonormal) {
  const SpectralPair p = assemble_fem(genus2_mesh(3));
  const Spectrum s = lowest_eigs(p, 8, iterative());
  for (int j = 1; j < s.size(); ++j) EXPECT_LE(s.eigenvalues[j - 1], s.eigenvalues[j]);
  const Eigen::MatrixXd G = s.eigenvectors.transpose() * p.mass.asDiagonal() * s.eigenvectors;
  EXPECT_LT((G - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(LowestEigs, DeterministicGivenSeed) {
  const SpectralPair p = assemble_fem(genus2_mesh(3));
  EigenOptions o = iterative();
  o.seed = 42;
  const Spectrum a = lowest_eigs(p, 5, o);
  const Spectrum b = lowest_eigs(p, 5, o);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
  o.seed = 43;
  const Spectrum c = lowest_eigs(p, 5, o);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(a.eigenvalues[j], c.eigenvalues[j], 1e-8);
}

TEST(LowestEigs, NearDegeneratePairsConverge) {
  // The symmetric genus-2 surface has a double eigenvalue near 1.43.
  const SpectralPair p = assemble_fem(genus2_mesh(3));
  const Spectrum s = lowest_eigs(p, 4, iterative());
  EXPECT_LT(std::abs(s.eigenvalues[2] - s.eigenvalues[3]), 1e-6);
  for (double r : s.residuals) EXPECT_LE(r, 1e-8);
}

TEST(LowestEigs, ExtrapolatedDenseAgreesWithFineMesh) {
  const double l3 = dense_eigs(assemble_fem(genus2_mesh(3))).eigenvalues[1];
  const double l4 = dense_eigs(assemble_fem(genus2_mesh(4))).eigenvalues[1];
  const double extrapolated = (4 * l4 - l3) / 3;
  const double fine = lowest_eigs(assemble_fem(genus2_mesh(5)), 2).eigenvalues[1];
  EXPECT_LT(std::abs(fine - extrapolated) / fine, 0.05);
}

TEST(LowestEigs, DifferencesContractUnderRefinement) {
  std::vector<std::vector<double>> lam;
  for (int level = 2; level <= 4; ++level) {
    lam.push_back(lowest_eigs(assemble_fem(genus2_mesh(level)), 6).eigenvalues);
  }
  for (int j = 1; j <= 5; ++j) {
    const double d1 = std::abs(lam[0][j] - lam[1][j]);
    const double d2 = std::abs(lam[1][j] - lam[2][j]);
    EXPECT_GE(d1, 2 * d2) << "eigenvalue " << j;
  }
}

TEST(LowestEigs, ReportsNonConvergence) {
  EigenOptions o = iterative();
  o.max_iterations = 1;
  o.tol = 1e-15;
  try {
    lowest_eigs(assemble_fem(genus2_mesh(4)), 6, o);
    ADD_FAILURE();
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Convergence);
    EXPECT_EQ(e.residuals().size(), 6u);
  }
}

TEST(LowestEigs, RejectsBadArguments) {
  const SpectralPair p = assemble_fem(genus2_mesh(1));
  EXPECT_THROW(lowest_eigs(p, 0), Error);
  EXPECT_THROW(lowest_eigs(p, p.size() + 1), Error);
  EigenOptions o;
  o.tol = 0;
  EXPECT_THROW(lowest_eigs(p, 2, o), Error);
}

TEST(SpectrumCsv, HeaderAndRows) {
  const Spectrum s = lowest_eigs(assemble_fem(genus2_mesh(1)), 3);
  std::ostringstream os;
  write_spectrum_csv(os, s);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,eigenvalue,residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}
