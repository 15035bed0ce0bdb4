#include "spca/rank1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace spca {

void top_k_indices(const double* mags, int n, int k, std::vector<int>& idx,
                   Support& out) {
  idx.resize(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto larger = [mags](int a, int b) {
    return mags[a] > mags[b] || (mags[a] == mags[b] && a < b);
  };
  if (k < n) {
    std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(), larger);
  }
  out.assign(idx.begin(), idx.begin() + k);
  std::sort(out.begin(), out.end());
}

Support top_k_magnitudes(const Vector& v, int k) {
  const int n = static_cast<int>(v.size());
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "k=" << k << " outside [1, " << n << "]";
    throw ValidationError(msg.str());
  }
  std::vector<double> mags(n);
  for (int i = 0; i < n; ++i) mags[i] = std::abs(v(i));
  std::vector<int> idx;
  Support out;
  top_k_indices(mags.data(), n, k, idx, out);
  return out;
}

SparseSolution solve_rank1(const Vector& v, int k) {
  if (v.size() == 0 || v.isZero(0.0)) {
    throw DegenerateError("rank-1 factor is the zero vector");
  }
  SparseSolution sol;
  sol.support = top_k_magnitudes(v, k);
  double norm2 = 0;
  for (int i : sol.support) norm2 += v(i) * v(i);
  // v is nonzero, so the top-k selection always captures a nonzero entry
  const double norm = std::sqrt(norm2);
  sol.x = Vector::Zero(v.size());
  for (int i : sol.support) sol.x(i) = v(i) / norm;
  sol.lambda = norm2;
  sol.value = norm2;
  sol.candidates_examined = 1;
  return sol;
}

}  // namespace spca
