#pragma once

#include <optional>

#include "spca/core.hpp"

namespace spca {

/// Unit vector of length D on the half-sphere. Canonical sign: the last
/// nonzero component is positive. |Vc| is invariant under c -> -c, so the
/// half-sphere loses nothing.
using Direction = Vector;

/// D distinct rows of V with signs; the first sign is fixed +1. There are
/// C(N,D) * 2^(D-1) such sets.
struct SignedIndexSet {
  std::vector<int> rows;   // 0-based, distinct
  std::vector<int> signs;  // each +1 or -1, signs[0] == +1
};

/// Flips c in place so that its last nonzero component is positive.
void canonicalize_direction(Vector& c);

/// Maps angles (phi_1..phi_{D-1}), each in (-pi/2, pi/2], to the unit vector
/// (sin p1, cos p1 sin p2, ..., cos p1 ... cos p_{D-1}), sign-canonicalized.
/// phi of length 0 yields the trivial D = 1 direction (1).
Direction hyperpolar(const Vector& phi);

/// Index set of the K largest entries of |V c|; ties by smaller index.
Support label(const Matrix& v, const Direction& c, int k);

/// Direction at which the D rows selected by j have pairwise equal magnitudes
/// of (Vc): the unit null vector of the (D-1) x D stack of rows
/// V_{i1} - s_m V_{im}, sign-canonicalized. Returns nullopt when the null
/// space is not one-dimensional (degenerate configuration).
std::optional<Direction> intersection_direction(const Matrix& v,
                                                const SignedIndexSet& j,
                                                double null_tol = 1e-10);

/// Allocation-free kernel behind intersection_direction, for hot loops:
/// writes the canonicalized null direction into c (preallocated, size D) and
/// returns false when the configuration is degenerate.
bool intersection_direction_into(const Matrix& v, const int* rows,
                                 const int* signs, int d, double null_tol,
                                 Vector& c);

/// One curve-crossing record of a rank-2 factor: the angle where
/// |(Vc)_i| = |(Vc)_j| for the given relative sign.
struct Rank2Intersection {
  double phi;  // in (-pi/2, pi/2]
  int i, j;    // 0-based rows, i < j
  int sign;    // +1 or -1
};

/// All non-degenerate crossings of a rank-2 factor, at most 2*C(N,2) records,
/// ordered by (i, j, sign).
std::vector<Rank2Intersection> rank2_intersections(const Matrix& v,
                                                   double null_tol = 1e-10);

}  // namespace spca
