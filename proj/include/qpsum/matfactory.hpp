#ifndef QPSUM_MATFACTORY_HPP
#define QPSUM_MATFACTORY_HPP

#include "qpsum/region.hpp"

#include <array>
#include <vector>

namespace qpsum {

/// Real 2x2 matrix, row-major.
struct Mat2 {
  std::array<double, 4> v{};

  constexpr double &operator()(int r, int c) { return v[2 * r + c]; }
  constexpr double operator()(int r, int c) const { return v[2 * r + c]; }

  static constexpr Mat2 diag(double d0, double d1) {
    return Mat2{{d0, 0.0, 0.0, d1}};
  }
  static constexpr Mat2 zero() { return Mat2{}; }

  double trace() const noexcept { return v[0] + v[3]; }
  double det() const noexcept { return v[0] * v[3] - v[1] * v[2]; }
  Mat2 transpose() const noexcept { return Mat2{{v[0], v[2], v[1], v[3]}}; }
  double max_abs() const noexcept;

  friend Mat2 operator*(const Mat2 &l, const Mat2 &r) noexcept;
  friend Mat2 operator+(const Mat2 &l, const Mat2 &r) noexcept;
  friend Mat2 operator-(const Mat2 &l, const Mat2 &r) noexcept;
  friend bool operator==(const Mat2 &, const Mat2 &) = default;
};

struct ProjectionPair2x2 {
  Mat2 p;
  Mat2 q;
  RegionPoint source;

  Mat2 qp() const noexcept { return q * p; }
};

/// Rank-one projections P, Q on K^2 with (QP)_11 = x and (QP)_22 = y.
/// Radicands within `tol` below zero are clamped; points outside A by more
/// than `tol`, or with x + y <= 0 other than the origin, raise
/// ErrorKind::Region. Points with |(x, y)| < 1e-15 use the origin pair
/// P = diag(1, 0), Q = diag(0, 1).
ProjectionPair2x2 make_pq(RegionPoint point, double tol = kRegionTolerance);

/// diag(1, -1) m diag(1, -1).
Mat2 conjugate_by_sign(const Mat2 &m) noexcept;

/// n pairs (Q_i, P_i) whose products sum to diag(-n/8, 3n/8): odd-indexed
/// pairs sit at the point (-1/8, 3/8), even-indexed ones are their sign
/// conjugates. n must be even and positive.
std::vector<ProjectionPair2x2> sharpness_family(int n);
Mat2 sharpness_sum(const std::vector<ProjectionPair2x2> &family) noexcept;

bool verify_rank1_projection(const Mat2 &m, double tol);

/// Rank-one projection, or one of diag(0,0), diag(1,0), diag(0,1),
/// diag(1,1) within tol.
bool is_block_projection(const Mat2 &m, double tol);

} // namespace qpsum

#endif
