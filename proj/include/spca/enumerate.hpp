#pragma once

#include "spca/core.hpp"

namespace spca {

struct CandidateFamily {
  std::vector<Support> supports;  // deduplicated, lexicographic order
  long long points_examined = 0;  // non-degenerate intersection points
  long long degenerate_skipped = 0;
};

struct EnumOptions {
  int threads = 1;
  bool extra_reductions = false;  // also recurse on the leading D-1 columns
  double null_tol = 1e-10;
};

/// Candidate supports of a rank-2 factor: both sign branches of every row
/// pair, 2*C(N,2) intersection points, boundary ties enumerated both ways.
CandidateFamily enumerate_rank2(const Matrix& v, int k,
                                const EnumOptions& opts = {});

/// Level-D candidate family: all C(N,D)*2^(D-1) signed index sets, labeling
/// at each intersection point with C(D, D_l) tie completions. D = 1 reduces
/// to the single rank-1 support; D = 2 delegates to enumerate_rank2.
CandidateFamily enumerate_rank_d(const Matrix& v, int k,
                                 const EnumOptions& opts = {});

/// Union of enumerate_rank_d over the leading D-2d columns of V for
/// d = 0 .. floor((D-1)/2), deduplicated.
CandidateFamily enumerate_total(const Matrix& v, int k,
                                const EnumOptions& opts = {});

/// Exact value of sum_{d=0}^{floor((D-1)/2)}
///   C(N, D-2d) * C(D-2d, floor(D/2)-d) * 2^(D-1-2d).
/// Throws OverflowError when the result exceeds the int64 range.
long long candidate_bound(int n, int d);

/// C(n, k) as long long; throws OverflowError on overflow.
long long binomial(int n, int k);

}  // namespace spca
