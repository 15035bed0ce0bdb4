#pragma once

#include "spca/core.hpp"

namespace spca {

/// Indices of the k largest |v_i|, sorted ascending. Ties broken by smaller
/// index. Average-case O(N) via introselect, not a full sort.
Support top_k_magnitudes(const Vector& v, int k);

/// Hot-loop variant: mags must already be nonnegative magnitudes. idx is a
/// reusable scratch buffer; out receives the sorted support.
void top_k_indices(const double* mags, int n, int k, std::vector<int>& idx,
                   Support& out);

/// Closed-form D = 1 solution: support = top-K magnitudes of v,
/// x_I = v_I / ||v_I||, lambda = ||v_I||^2.
SparseSolution solve_rank1(const Vector& v, int k);

}  // namespace spca
