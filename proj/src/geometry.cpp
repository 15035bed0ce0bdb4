#include "spca/geometry.hpp"

#include <cmath>

#include "spca/rank1.hpp"

namespace spca {

void canonicalize_direction(Vector& c) {
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) {
    if (c(i) != 0.0) {
      if (c(i) < 0.0) c = -c;
      return;
    }
  }
}

Direction hyperpolar(const Vector& phi) {
  constexpr double half_pi = 1.5707963267948966;
  const int d = static_cast<int>(phi.size()) + 1;
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    if (!(phi(i) > -half_pi && phi(i) <= half_pi)) {
      throw ValidationError("angle outside (-pi/2, pi/2]");
    }
  }
  Vector c(d);
  double prefix = 1.0;
  for (int i = 0; i + 1 < d; ++i) {
    c(i) = prefix * std::sin(phi(i));
    prefix *= std::cos(phi(i));
  }
  c(d - 1) = prefix;
  c.normalize();
  canonicalize_direction(c);
  return c;
}

Support label(const Matrix& v, const Direction& c, int k) {
  if (v.cols() != c.size()) {
    throw ValidationError("direction length does not match factor rank");
  }
  return top_k_magnitudes(v * c, k);
}

bool intersection_direction_into(const Matrix& v, const int* rows,
                                 const int* signs, int d, double null_tol,
                                 Vector& c) {
  const auto r0 = v.row(rows[0]);

  if (d == 2) {
    const double a = r0(0) - signs[1] * v(rows[1], 0);
    const double b = r0(1) - signs[1] * v(rows[1], 1);
    const double nrm = std::hypot(a, b);
    const double scale = std::max(r0.norm(), v.row(rows[1]).norm());
    if (nrm <= null_tol * std::max(scale, 1e-300)) return false;
    c(0) = b / nrm;
    c(1) = -a / nrm;
  } else if (d == 3) {
    // Null vector of the 2x3 stack is the cross product of its rows; the
    // rank test sigma_2 > tol*sigma_1 uses ||m1 x m2|| = sigma_1*sigma_2 and
    // the closed-form top eigenvalue of the 2x2 Gram.
    Eigen::Vector3d m1, m2;
    for (int col = 0; col < 3; ++col) {
      m1(col) = r0(col) - signs[1] * v(rows[1], col);
      m2(col) = r0(col) - signs[2] * v(rows[2], col);
    }
    const Eigen::Vector3d cross = m1.cross(m2);
    const double g11 = m1.squaredNorm(), g22 = m2.squaredNorm(),
                 g12 = m1.dot(m2);
    const double mean = 0.5 * (g11 + g22);
    const double disc = std::sqrt(0.25 * (g11 - g22) * (g11 - g22) + g12 * g12);
    const double sigma1_sq = mean + disc;
    const double cn = cross.norm();
    if (cn <= null_tol * std::max(sigma1_sq, 1e-300)) return false;
    c(0) = cross(0) / cn;
    c(1) = cross(1) / cn;
    c(2) = cross(2) / cn;
  } else {
    Matrix m(d - 1, d);
    for (int row = 1; row < d; ++row) {
      m.row(row - 1) = r0 - signs[row] * v.row(rows[row]);
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(d - 2) <= null_tol * sv(0)) return false;
    c = svd.matrixV().col(d - 1);
  }

  canonicalize_direction(c);
  return true;
}

std::optional<Direction> intersection_direction(const Matrix& v,
                                                const SignedIndexSet& j,
                                                double null_tol) {
  const int d = static_cast<int>(j.rows.size());
  if (d < 2) throw ValidationError("signed index set needs at least two rows");
  if (v.cols() != d) {
    throw ValidationError("signed index set size does not match factor rank");
  }
  Vector c(d);
  if (!intersection_direction_into(v, j.rows.data(), j.signs.data(), d,
                                   null_tol, c)) {
    return std::nullopt;
  }
  return c;
}

std::vector<Rank2Intersection> rank2_intersections(const Matrix& v,
                                                   double null_tol) {
  if (v.cols() != 2) throw ValidationError("rank2_intersections needs D = 2");
  const int n = static_cast<int>(v.rows());
  std::vector<Rank2Intersection> out;
  SignedIndexSet jset;
  jset.rows = {0, 0};
  jset.signs = {1, 1};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      jset.rows[0] = i;
      jset.rows[1] = j;
      for (int sign : {1, -1}) {
        jset.signs[1] = sign;
        auto dir = intersection_direction(v, jset, null_tol);
        if (!dir) continue;
        // canonical c has c(1) >= 0, so atan2 lands in (-pi/2, pi/2]
        out.push_back({std::atan2((*dir)(0), (*dir)(1)), i, j, sign});
      }
    }
  }
  return out;
}

}  // namespace spca
