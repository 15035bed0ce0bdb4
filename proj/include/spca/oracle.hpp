#pragma once

#include "spca/core.hpp"

namespace spca {

struct OracleOptions {
  double cap = 1e7;       // refuse when C(N,K) exceeds this
  bool paranoid = false;  // score with the independent K x K eigensolve
};

/// Brute-force reference: scores every size-K subset and returns the global
/// maximum with the same tie-break as solve(). No pruning.
SparseSolution solve_exhaustive(const Matrix& v, int k,
                                const OracleOptions& opts = {});

/// lambda_max of the K x K matrix W W^T via a generic dense symmetric
/// eigensolver -- independent of score_support's D x D path.
double paranoid_score(const Matrix& v, const Support& support);

}  // namespace spca
