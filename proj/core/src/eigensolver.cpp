#include "hypspec/eigensolver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "hypspec/error.hpp"

namespace hypspec {

namespace {

double residual_norm(const SpectralPair& pair, const Eigen::VectorXd& x, double lambda) {
  const Eigen::VectorXd r = pair.stiffness * x - lambda * pair.mass.cwiseProduct(x);
  const double norm = std::sqrt(r.cwiseAbs2().cwiseQuotient(pair.mass).sum());
  return norm / std::max(1.0, std::abs(lambda));
}

void normalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  if (v[idx] < 0) v = -v;
}

// M-orthonormalize the columns of `block` against `basis` (first `used`
// columns) and among themselves. Returns the number of columns kept, which
// are written into basis starting at `used`.
int orthonormalize_into(Eigen::MatrixXd& basis, int used, const Eigen::MatrixXd& block,
                        const Eigen::VectorXd& mass) {
  int kept = used;
  for (int c = 0; c < block.cols(); ++c) {
    if (kept >= basis.cols()) break;
    Eigen::VectorXd v = block.col(c);
    const double before = std::sqrt(v.dot(mass.cwiseProduct(v)));
    if (!(before > 0.0)) continue;
    for (int pass = 0; pass < 2; ++pass) {
      if (kept > 0) {
        const Eigen::VectorXd mv = mass.cwiseProduct(v);
        const Eigen::VectorXd coeff = basis.leftCols(kept).transpose() * mv;
        v.noalias() -= basis.leftCols(kept) * coeff;
      }
    }
    const double after = std::sqrt(v.dot(mass.cwiseProduct(v)));
    if (after <= 1e-10 * before) continue;
    basis.col(kept++) = v / after;
  }
  return kept - used;
}

Spectrum take_lowest(const SpectralPair& pair, const Spectrum& full, int count) {
  Spectrum out;
  out.eigenvectors = full.eigenvectors.leftCols(count);
  out.eigenvalues.assign(full.eigenvalues.begin(), full.eigenvalues.begin() + count);
  out.residuals.resize(count);
  for (int j = 0; j < count; ++j) {
    out.residuals[j] = residual_norm(pair, out.eigenvectors.col(j), out.eigenvalues[j]);
  }
  out.iterations = full.iterations;
  return out;
}

}  // namespace

Spectrum dense_eigs(const SpectralPair& pair) {
  const int n = pair.size();
  if (n == 0) fail(ErrorKind::InvalidInput, "empty pencil");
  if ((pair.mass.array() <= 0.0).any()) {
    fail(ErrorKind::InvalidInput, "mass matrix must be positive");
  }
  const Eigen::VectorXd inv_sqrt = pair.mass.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd A = inv_sqrt.asDiagonal() * Eigen::MatrixXd(pair.stiffness) *
                      inv_sqrt.asDiagonal();
  A = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense symmetric eigensolver failed", {});
  }
  Spectrum s;
  s.eigenvectors = inv_sqrt.asDiagonal() * es.eigenvectors();
  s.eigenvalues.resize(n);
  s.residuals.resize(n);
  for (int j = 0; j < n; ++j) {
    s.eigenvalues[j] = es.eigenvalues()(j);
    normalize_sign(s.eigenvectors.col(j));
    s.residuals[j] = residual_norm(pair, s.eigenvectors.col(j), s.eigenvalues[j]);
  }
  s.iterations = 1;
  return s;
}

Spectrum lowest_eigs(const SpectralPair& pair, int count, const EigenOptions& options) {
  const int n = pair.size();
  if (count < 1 || count > n) {
    fail(ErrorKind::InvalidInput, "eigenpair count must be in [1, vertex count]");
  }
  if (!(options.tol > 0.0)) fail(ErrorKind::Domain, "tolerance must be positive");
  if ((pair.mass.array() <= 0.0).any()) {
    fail(ErrorKind::InvalidInput, "mass matrix must be positive");
  }

  const int block = std::min(n, std::max(count + 6, 2 * count));
  const int depth = 6;
  if (n <= options.dense_threshold || block * depth >= n / 2) {
    return take_lowest(pair, dense_eigs(pair), count);
  }

  Eigen::SparseMatrix<double> shifted = pair.stiffness;
  for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += options.shift * pair.mass[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("factorization of the shifted stiffness failed", {});
  }
  auto apply = [&](const Eigen::MatrixXd& X) {
    Eigen::MatrixXd MX = pair.mass.asDiagonal() * X;
    return Eigen::MatrixXd(solver.solve(MX));
  };

  std::mt19937_64 rng(options.seed);
  Eigen::MatrixXd X(n, block);
  for (int c = 0; c < block; ++c) {
    for (int i = 0; i < n; ++i) {
      X(i, c) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    }
  }

  const int max_basis = block * depth;
  Eigen::MatrixXd V(n, max_basis);
  std::vector<double> residuals(count, std::numeric_limits<double>::infinity());
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    int used = orthonormalize_into(V, 0, X, pair.mass);
    int start = 0;
    for (int step = 1; step < depth && used < max_basis; ++step) {
      const int width = used - start;
      if (width == 0) break;
      const Eigen::MatrixXd next = apply(V.middleCols(start, width));
      start = used;
      used += orthonormalize_into(V, used, next, pair.mass);
    }
    const auto basis = V.leftCols(used);
    Eigen::MatrixXd H = basis.transpose() * (pair.stiffness * basis);
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const int keep = std::min(block, used);
    Eigen::MatrixXd ritz = basis * es.eigenvectors().leftCols(keep);

    bool converged = keep >= count;
    for (int j = 0; j < std::min(count, keep); ++j) {
      residuals[j] = residual_norm(pair, ritz.col(j), es.eigenvalues()(j));
      if (!(residuals[j] <= options.tol)) converged = false;
    }
    if (converged) {
      Spectrum s;
      s.iterations = iter;
      s.eigenvectors = ritz.leftCols(count);
      s.eigenvalues.resize(count);
      s.residuals.assign(residuals.begin(), residuals.begin() + count);
      for (int j = 0; j < count; ++j) {
        s.eigenvalues[j] = es.eigenvalues()(j);
        normalize_sign(s.eigenvectors.col(j));
      }
      return s;
    }
    X = std::move(ritz);
  }
  std::ostringstream os;
  os << "eigensolver did not reach tol=" << options.tol << " in "
     << options.max_iterations << " iterations; best residuals:";
  for (double r : residuals) os << ' ' << r;
  throw ConvergenceError(os.str(), residuals);
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  auto fmt = [](double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
  };
  out << "index,eigenvalue,residual\n";
  for (int j = 0; j < spectrum.size(); ++j) {
    out << j << ',' << fmt(spectrum.eigenvalues[j]) << ',' << fmt(spectrum.residuals[j])
        << '\n';
  }
}

}  // namespace hypspec
