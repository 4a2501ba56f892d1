#ifndef QPSUM_TEST_SUPPORT_HPP
#define QPSUM_TEST_SUPPORT_HPP
// Shared generators for the test binaries: seeded RNG, low-discrepancy
// points in A, random unitaries and commuting Hermitian pairs.

#include "qpsum/linalg.hpp"
#include "qpsum/region.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qpsum::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64 &g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// (s, d) -> (x, y) with s = x + y, d = x - y.
inline RegionPoint from_sd(double s, double d) {
  return {(s + d) / 2.0, (s - d) / 2.0};
}

// Halton point i mapped into A: s in [0, 1], d in [-sqrt s, sqrt s].
inline RegionPoint halton_point_in_a(std::uint64_t i) {
  const double s = radical_inverse(i + 1, 2);
  const double v = radical_inverse(i + 1, 3);
  return from_sd(s, (2.0 * v - 1.0) * std::sqrt(s));
}

// Boundary sample j of count: alternates the parabola branches d = +-sqrt s
// and the top edge s = 1.
inline RegionPoint boundary_point(std::size_t j, std::size_t count) {
  const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(count);
  switch (j % 3) {
  case 0:
    return from_sd(t, std::sqrt(t));
  case 1:
    return from_sd(t, -std::sqrt(t));
  default:
    return from_sd(1.0, 2.0 * t - 1.0);
  }
}

inline RegionPoint random_point_in_a(std::mt19937_64 &g, double boundary_share) {
  const double s = uniform(g, 0.0, 1.0);
  if (uniform(g, 0.0, 1.0) < boundary_share) {
    const double sign = uniform(g, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    return from_sd(s, sign * std::sqrt(s));
  }
  return from_sd(s, uniform(g, -1.0, 1.0) * std::sqrt(s));
}

// Haar-ish unitary: Gram-Schmidt on a complex Gaussian matrix.
inline CMatrix random_unitary(std::mt19937_64 &g, std::size_t n) {
  std::normal_distribution<double> normal;
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = cplx(normal(g), normal(g));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t k = 0; k < c; ++k) {
      cplx dot = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        dot += std::conj(m(r, k)) * m(r, c);
      for (std::size_t r = 0; r < n; ++r)
        m(r, c) -= dot * m(r, k);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      norm += std::norm(m(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r)
      m(r, c) /= norm;
  }
  return m;
}

// u diag(values) u*.
inline CMatrix conjugate_diagonal(const CMatrix &u, const std::vector<double> &values) {
  return u * CMatrix::diagonal(values) * u.adjoint();
}

struct CommutingPair {
  HermitianMatrix z1;
  HermitianMatrix z2;
  std::vector<RegionPoint> points;
};

// Commuting pair with joint spectrum drawn from A. Some points are repeated
// so that the eigenvalue clusters of z1 are exercised.
inline CommutingPair random_commuting_pair(std::mt19937_64 &g, std::size_t dim,
                                           double boundary_share) {
  std::vector<RegionPoint> pts;
  for (std::size_t k = 0; k < dim; ++k) {
    if (k > 0 && uniform(g, 0.0, 1.0) < 0.2)
      pts.push_back(pts[static_cast<std::size_t>(uniform(g, 0.0, static_cast<double>(k)))]);
    else
      pts.push_back(random_point_in_a(g, boundary_share));
  }
  std::vector<double> xs, ys;
  for (const auto &p : pts) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  const CMatrix u = random_unitary(g, dim);
  return {HermitianMatrix(conjugate_diagonal(u, xs), 1e-10),
          HermitianMatrix(conjugate_diagonal(u, ys), 1e-10), pts};
}

} // namespace qpsum::testing

#endif
