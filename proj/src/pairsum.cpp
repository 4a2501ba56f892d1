#include "qpsum/pairsum.hpp"

#include "qpsum/error.hpp"
#include "qpsum/matfactory.hpp"

#include <algorithm>
#include <sstream>

namespace qpsum {

namespace {

// Embeds one 2x2 block per joint eigenvector, coupling coordinate k of the
// first copy with coordinate k of the second.
CMatrix assemble(const std::vector<Mat2> &blocks) {
  const std::size_t k = blocks.size();
  CMatrix out(2 * k, 2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const Mat2 &b = blocks[j];
    out(j, j) = b(0, 0);
    out(j, k + j) = b(0, 1);
    out(k + j, j) = b(1, 0);
    out(k + j, k + j) = b(1, 1);
  }
  return out;
}

} // namespace

PairSumResult build_pair_sum(const HermitianMatrix &z1,
                             const HermitianMatrix &z2, double tol) {
  JointSpectrum joint = joint_diag(z1, z2);
  const std::size_t k = z1.dim();

  std::vector<Mat2> p_blocks, q_blocks, pp_blocks, qp_blocks;
  PairSumResult out;
  for (std::size_t j = 0; j < k; ++j) {
    const RegionPoint point{joint.values[j].first, joint.values[j].second};
    ProjectionPair2x2 pq;
    try {
      pq = make_pq(point, tol);
    } catch (const Error &e) {
      std::ostringstream os;
      os.precision(17);
      os << "joint eigenvalue pair " << j << " = (" << point.x << ", "
         << point.y << ") is not in A: " << e.what();
      fail(ErrorKind::Region, os.str());
    }
    p_blocks.push_back(pq.p);
    q_blocks.push_back(pq.q);
    pp_blocks.push_back(conjugate_by_sign(pq.p));
    qp_blocks.push_back(conjugate_by_sign(pq.q));
    out.points.push_back(point);
  }

  const CMatrix w = direct_sum(joint.basis, joint.basis);
  const CMatrix wh = w.adjoint();
  out.p = w * assemble(p_blocks) * wh;
  out.q = w * assemble(q_blocks) * wh;
  out.p_prime = w * assemble(pp_blocks) * wh;
  out.q_prime = w * assemble(qp_blocks) * wh;
  out.basis = std::move(joint.basis);
  return out;
}

double PairSumReport::worst_projection_defect() const noexcept {
  double worst = 0.0;
  for (const ProjectionDefects *d : {&p, &q, &p_prime, &q_prime})
    worst = std::max({worst, d->idempotency, d->hermiticity});
  return worst;
}

std::string PairSumReport::summary() const {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  os << "P defect " << std::max(p.idempotency, p.hermiticity) << ", Q defect "
     << std::max(q.idempotency, q.hermiticity) << ", P' defect "
     << std::max(p_prime.idempotency, p_prime.hermiticity) << ", Q' defect "
     << std::max(q_prime.idempotency, q_prime.hermiticity)
     << ", sum defect " << sum_defect << (passed ? " [pass]" : " [fail]");
  return os.str();
}

PairSumReport verify_pair_sum(const PairSumResult &r, const HermitianMatrix &z1,
                              const HermitianMatrix &z2, double tol) {
  PairSumReport report;
  report.p = defect_norms(r.p);
  report.q = defect_norms(r.q);
  report.p_prime = defect_norms(r.p_prime);
  report.q_prime = defect_norms(r.q_prime);
  const CMatrix target = 2.0 * direct_sum(z1.matrix(), z2.matrix());
  report.sum_defect = (r.q * r.p + r.q_prime * r.p_prime - target).max_abs();
  report.passed =
      report.worst_projection_defect() <= tol && report.sum_defect <= tol;
  return report;
}

} // namespace qpsum
