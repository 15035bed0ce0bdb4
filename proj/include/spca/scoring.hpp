#pragma once

#include <utility>

#include "spca/core.hpp"
#include "spca/enumerate.hpp"

namespace spca {

/// Exact objective of a support: lambda = largest eigenvalue of the D x D
/// Gram matrix W^T W where W gathers the support rows of V, and the local
/// loadings x_local = W u / ||W u|| for the top eigenvector u. Cost
/// O(K D^2 + D^3). All-zero W yields lambda = 0 and x_local = e1.
/// x_local is sign-canonicalized: first nonzero component positive.
std::pair<double, Vector> score_support(const Matrix& v, const Support& support);

struct SolveOptions {
  int threads = 1;
  bool extra_reductions = false;
  double null_tol = 1e-10;
};

/// Full solver: D = 1 dispatches to the closed form, D >= 2 enumerates the
/// candidate family and takes the argmax of score_support. Lambda ties break
/// to the lexicographically smallest support; x has its first nonzero
/// positive.
SparseSolution solve(const LowRankInstance& instance,
                     const SolveOptions& opts = {});

}  // namespace spca
