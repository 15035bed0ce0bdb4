#include "spca/core.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace spca {

namespace {

void check_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + " contains non-finite entries");
  }
}

}  // namespace

LowRankInstance build_instance(const Matrix& v, double sigma, int k) {
  const int n = static_cast<int>(v.rows());
  const int d = static_cast<int>(v.cols());
  if (d < 1) throw ValidationError("factor V must have at least one column");
  if (d > n) {
    std::ostringstream msg;
    msg << "rank D=" << d << " exceeds dimension N=" << n;
    throw ValidationError(msg.str());
  }
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "sparsity K=" << k << " outside [1, " << n << "]";
    throw ValidationError(msg.str());
  }
  check_finite(v, "factor V");
  if (!std::isfinite(sigma)) throw ValidationError("sigma is not finite");
  return LowRankInstance{v, sigma, k};
}

LowRankInstance extract_from_dense(const Matrix& c_matrix, int k,
                                   double rank_tol,
                                   const double* sigma_override) {
  const int n = static_cast<int>(c_matrix.rows());
  if (c_matrix.cols() != n) throw ValidationError("matrix is not square");
  check_finite(c_matrix, "input matrix");
  const double scale = c_matrix.norm();
  if ((c_matrix - c_matrix.transpose()).norm() > 1e-10 * std::max(scale, 1.0)) {
    throw ValidationError("matrix is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(c_matrix);
  if (eig.info() != Eigen::Success) {
    throw ValidationError("eigendecomposition failed");
  }
  const Vector& evals = eig.eigenvalues();  // ascending
  const double lambda_max = evals(n - 1);
  const double abs_tol = rank_tol * std::max(std::abs(lambda_max), 1e-300);

  const double sigma = sigma_override ? *sigma_override : evals(0);
  if (sigma_override && evals(0) < sigma - abs_tol) {
    throw ValidationError("C - sigma*I is not positive semidefinite");
  }

  int d = 0;
  for (int i = 0; i < n; ++i) {
    if (evals(i) > sigma + abs_tol) ++d;
  }
  if (d == 0) {
    throw DegenerateError(
        "zero-rank update: matrix is a multiple of the identity");
  }

  Matrix v(n, d);
  for (int j = 0; j < d; ++j) {
    const int src = n - d + j;  // keep descending-eigenvalue order in columns
    v.col(d - 1 - j) = eig.eigenvectors().col(src) *
                       std::sqrt(std::max(evals(src) - sigma, 0.0));
  }
  return build_instance(v, sigma, k);
}

Matrix perturb_factor(const Matrix& v, double eps, unsigned long long seed) {
  if (eps == 0.0) return v;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix g(v.rows(), v.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = dist(gen);
  }
  const double gn = g.norm();
  if (gn == 0.0) return v;
  return v + (eps * v.norm() / gn) * g;
}

}  // namespace spca
