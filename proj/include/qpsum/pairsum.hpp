#ifndef QPSUM_PAIRSUM_HPP
#define QPSUM_PAIRSUM_HPP

// Finite-dimensional pair builder: given commuting Hermitian z1, z2 on K
// whose joint eigenvalue pairs all lie in A, produce projections P, Q,
// P', Q' on K (+) K with QP + Q'P' = 2 (z1 (+) z2).

#include "qpsum/linalg.hpp"
#include "qpsum/region.hpp"

#include <string>

namespace qpsum {

struct PairSumResult {
  CMatrix p;
  CMatrix q;
  CMatrix p_prime;
  CMatrix q_prime;
  CMatrix basis;  // joint eigenbasis of (z1, z2) on K
  std::vector<RegionPoint> points;  // joint eigenvalue pairs, basis order
};

/// Couples the k-th joint eigenvector of the first copy of K with the k-th
/// of the second through the 2x2 factory blocks at (x_k, y_k). Raises
/// ErrorKind::Region naming the pair if one lies outside A, and
/// ErrorKind::Domain if z1, z2 do not commute.
PairSumResult build_pair_sum(const HermitianMatrix &z1,
                             const HermitianMatrix &z2,
                             double tol = kRegionTolerance);

struct PairSumReport {
  ProjectionDefects p;
  ProjectionDefects q;
  ProjectionDefects p_prime;
  ProjectionDefects q_prime;
  double sum_defect = 0.0;  // ||QP + Q'P' - 2 (z1 (+) z2)||_max
  bool passed = false;

  double worst_projection_defect() const noexcept;
  std::string summary() const;
};

PairSumReport verify_pair_sum(const PairSumResult &r, const HermitianMatrix &z1,
                              const HermitianMatrix &z2, double tol);

} // namespace qpsum

#endif
