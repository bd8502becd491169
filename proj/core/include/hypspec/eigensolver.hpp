#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "hypspec/spectral.hpp"

namespace hypspec {

struct EigenOptions {
  double tol = 1e-8;
  int max_iterations = 10'000;
  std::uint64_t seed = 0;
  /// Shift for the inverse iteration operator (S + shift*M)^{-1} M.
  double shift = 1e-3;
  /// Pencils at or below this size are solved densely.
  int dense_threshold = 600;
};

/// Lowest eigenpairs of S x = lambda M x. Eigenvectors are M-orthonormal and
/// sign-normalized so their largest-magnitude entry is positive. Residuals
/// are ||S x - lambda M x||_{M^-1} / max(1, lambda).
struct Spectrum {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::vector<double> residuals;
  int iterations = 0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Restarted block Krylov iteration with full M-reorthogonalization on the
/// shift-inverted operator. Throws ConvergenceError after max_iterations.
Spectrum lowest_eigs(const SpectralPair& pair, int count, const EigenOptions& options = {});

/// Full spectrum by a dense symmetric solve of M^{-1/2} S M^{-1/2}.
Spectrum dense_eigs(const SpectralPair& pair);

/// CSV with header "index,eigenvalue,residual".
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace hypspec
