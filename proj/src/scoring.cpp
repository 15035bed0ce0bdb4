#include "spca/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "spca/rank1.hpp"

namespace spca {

namespace {

void canonicalize_loadings(Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) != 0.0) {
      if (x(i) < 0.0) x = -x;
      return;
    }
  }
}

// Top eigenpair of a symmetric D x D Gram matrix. Closed forms for D <= 2,
// Eigen's solver above that.
std::pair<double, Vector> top_eigenpair(const Matrix& gram) {
  const int d = static_cast<int>(gram.rows());
  if (d == 1) {
    Vector u(1);
    u << 1.0;
    return {gram(0, 0), u};
  }
  if (d == 2) {
    const double a = gram(0, 0), b = gram(0, 1), c = gram(1, 1);
    const double mean = 0.5 * (a + c);
    const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    const double lambda = mean + disc;
    Vector u(2);
    if (std::abs(b) > 0.0) {
      u << b, lambda - a;
    } else {
      u << (a >= c ? 1.0 : 0.0), (a >= c ? 0.0 : 1.0);
    }
    const double un = u.norm();
    if (un > 0.0) u /= un;
    else u << 1.0, 0.0;
    return {lambda, u};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  return {eig.eigenvalues()(d - 1), eig.eigenvectors().col(d - 1)};
}

}  // namespace

std::pair<double, Vector> score_support(const Matrix& v,
                                        const Support& support) {
  const int n = static_cast<int>(v.rows());
  const int d = static_cast<int>(v.cols());
  const int k = static_cast<int>(support.size());
  Matrix w(k, d);
  for (int i = 0; i < k; ++i) {
    const int row = support[i];
    if (row < 0 || row >= n) throw ValidationError("support index out of range");
    w.row(i) = v.row(row);
  }
  const Matrix gram = w.transpose() * w;
  auto [lambda, u] = top_eigenpair(gram);

  Vector x_local = w * u;
  const double xn = x_local.norm();
  if (lambda <= 0.0 || xn == 0.0) {
    x_local = Vector::Zero(k);
    x_local(0) = 1.0;
    return {0.0, x_local};
  }
  x_local /= xn;
  canonicalize_loadings(x_local);
  return {lambda, x_local};
}

namespace {

struct Best {
  double lambda = -1.0;
  size_t index = 0;
  bool valid = false;
};

// Deterministic argmax: larger lambda wins, exact ties go to the
// lexicographically smaller support (the family is in lex order).
void reduce_best(Best& acc, const Best& other,
                 const std::vector<Support>& supports) {
  if (!other.valid) return;
  if (!acc.valid || other.lambda > acc.lambda ||
      (other.lambda == acc.lambda &&
       supports[other.index] < supports[acc.index])) {
    acc = other;
  }
}

}  // namespace

SparseSolution solve(const LowRankInstance& instance, const SolveOptions& opts) {
  const Matrix& v = instance.v;
  const int n = instance.n();
  const int d = instance.d();
  const int k = instance.k;

  if (v.isZero(0.0)) throw DegenerateError("factor V is the zero matrix");

  if (d == 1) {
    SparseSolution sol = solve_rank1(v.col(0), k);
    canonicalize_loadings(sol.x);
    sol.value = instance.sigma + sol.lambda;
    return sol;
  }

  EnumOptions eopts;
  eopts.threads = opts.threads;
  eopts.extra_reductions = opts.extra_reductions;
  eopts.null_tol = opts.null_tol;
  CandidateFamily fam = enumerate_total(v, k, eopts);
  const auto& supports = fam.supports;

  const size_t count = supports.size();
  const int threads =
      std::max(1, std::min<int>(opts.threads, static_cast<int>(count)));
  Best best;
  if (threads == 1) {
    for (size_t i = 0; i < count; ++i) {
      const double lambda = score_support(v, supports[i]).first;
      reduce_best(best, Best{lambda, i, true}, supports);
    }
  } else {
    std::vector<Best> parts(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        const size_t lo = count * t / threads;
        const size_t hi = count * (t + 1) / threads;
        Best local;
        for (size_t i = lo; i < hi; ++i) {
          const double lambda = score_support(v, supports[i]).first;
          reduce_best(local, Best{lambda, i, true}, supports);
        }
        parts[t] = local;
      });
    }
    for (auto& th : pool) th.join();
    for (const Best& p : parts) reduce_best(best, p, supports);
  }
  if (!best.valid) throw DegenerateError("empty candidate family");

  SparseSolution sol;
  sol.support = supports[best.index];
  auto [lambda, x_local] = score_support(v, sol.support);
  sol.lambda = lambda;
  sol.value = instance.sigma + lambda;
  sol.x = Vector::Zero(n);
  for (int i = 0; i < k; ++i) sol.x(sol.support[i]) = x_local(i);
  sol.candidates_examined = static_cast<long long>(count);
  sol.intersection_points = fam.points_examined;
  sol.degenerate_skipped = fam.degenerate_skipped;
  return sol;
}

}  // namespace spca
