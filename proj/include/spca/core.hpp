#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace spca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Sorted 0-based row indices of the nonzero entries of a candidate solution.
/// External formats (CLI, files) are 1-based; the shift happens at the boundary.
using Support = std::vector<int>;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate problem: zero-rank update, zero factor, or every intersection
/// point skipped as rank-deficient.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search refused: C(N,K) exceeds the configured cap.
class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(const std::string& msg, double count)
      : std::runtime_error(msg), subset_count(count) {}
  double subset_count;
};

class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The problem C = sigma*I_N + V*V^T with sparsity budget K.
/// Immutable after construction; safe to share across threads.
struct LowRankInstance {
  Matrix v;          // N x D factor of the update A = V V^T
  double sigma = 0;  // identity-shift coefficient
  int k = 1;         // sparsity budget, 1 <= k <= n

  int n() const { return static_cast<int>(v.rows()); }
  int d() const { return static_cast<int>(v.cols()); }
};

struct SparseSolution {
  Support support;                   // size K, sorted
  Vector x;                          // length N, unit norm, zero off support
  double lambda = 0;                 // x^T A x
  double value = 0;                  // sigma + lambda = x^T C x
  long long candidates_examined = 0;
  long long intersection_points = 0;
  long long degenerate_skipped = 0;
};

/// Validates and packs (V, sigma, K). D is taken as the column count of V;
/// no rank re-check is performed.
LowRankInstance build_instance(const Matrix& v, double sigma, int k);

/// Recovers (sigma, V) from a dense symmetric PSD matrix C: sigma = lambda_min(C),
/// D = number of eigenvalues above sigma + rank_tol*lambda_max, V the scaled
/// eigenvectors of the remainder. Throws DegenerateError when C is a multiple
/// of the identity (D = 0).
/// When sigma_override is given it is used instead of lambda_min and the
/// remainder C - sigma*I must itself be PSD within tolerance.
LowRankInstance extract_from_dense(const Matrix& c_matrix, int k,
                                   double rank_tol = 1e-9,
                                   const double* sigma_override = nullptr);

/// Deterministic seeded jitter of Frobenius magnitude eps*||V||_F, used to
/// break exact degeneracies in hand-crafted inputs.
Matrix perturb_factor(const Matrix& v, double eps, unsigned long long seed = 0x5eed);

}  // namespace spca
