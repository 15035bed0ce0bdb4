#include "spca/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "spca/enumerate.hpp"
#include "spca/scoring.hpp"

namespace spca {

double paranoid_score(const Matrix& v, const Support& support) {
  const int k = static_cast<int>(support.size());
  Matrix w(k, v.cols());
  for (int i = 0; i < k; ++i) w.row(i) = v.row(support[i]);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(w * w.transpose());
  return eig.eigenvalues()(k - 1);
}

SparseSolution solve_exhaustive(const Matrix& v, int k,
                                const OracleOptions& opts) {
  const int n = static_cast<int>(v.rows());
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "k=" << k << " outside [1, " << n << "]";
    throw ValidationError(msg.str());
  }
  if (!v.allFinite()) throw ValidationError("factor V has non-finite entries");

  double subset_count;
  try {
    subset_count = static_cast<double>(binomial(n, k));
  } catch (const OverflowError&) {
    subset_count = std::numeric_limits<double>::infinity();
  }
  if (subset_count > opts.cap) {
    std::ostringstream msg;
    msg << "C(" << n << ", " << k << ") = " << subset_count
        << " exceeds the exhaustive-search cap " << opts.cap;
    throw CapExceededError(msg.str(), subset_count);
  }

  // Lexicographic subset walk via the iterative successor; the first subset
  // reaching the maximum is kept, which realizes the lex-smallest tie-break.
  Support subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  Support best_support;
  double best_lambda = -1.0;
  long long examined = 0;
  for (;;) {
    ++examined;
    const double lambda = opts.paranoid ? paranoid_score(v, subset)
                                        : score_support(v, subset).first;
    if (best_support.empty() || lambda > best_lambda) {
      best_lambda = lambda;
      best_support = subset;
    }
    // successor
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }

  SparseSolution sol;
  sol.support = best_support;
  auto [lambda, x_local] = score_support(v, best_support);
  sol.lambda = lambda;
  sol.value = lambda;
  sol.x = Vector::Zero(n);
  for (int i = 0; i < k; ++i) sol.x(best_support[i]) = x_local(i);
  sol.candidates_examined = examined;
  return sol;
}

}  // namespace spca
