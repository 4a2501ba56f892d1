#include "qpsum/error.hpp"
#include "qpsum/pairsum.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace qpsum;
using namespace qpsum::testing;

namespace {
HermitianMatrix scalar(std::size_t n, double v) {
  return HermitianMatrix::diagonal(std::vector<double>(n, v));
}
} // namespace

TEST_CASE("one-dimensional hand case") {
  const auto z1 = scalar(1, 0.0);
  const auto z2 = scalar(1, 0.5);
  const PairSumResult r = build_pair_sum(z1, z2);
  const std::vector<double> half{0.5, 0.5, 0.5, 0.5};
  const std::vector<double> e22{0.0, 0.0, 0.0, 1.0};
  CHECK((r.p - CMatrix::from_real(2, 2, half)).max_abs() <= 1e-15);
  CHECK((r.q - CMatrix::from_real(2, 2, e22)).max_abs() <= 1e-15);
  const CMatrix sum = r.q * r.p + r.q_prime * r.p_prime;
  const std::vector<double> want{0.0, 0.0, 0.0, 1.0};
  CHECK((sum - CMatrix::from_real(2, 2, want)).max_abs() <= 1e-15);
  CHECK(verify_pair_sum(r, z1, z2, 1e-12).passed);
}

TEST_CASE("zero operators") {
  for (std::size_t k : {1u, 3u, 6u}) {
    const auto z = HermitianMatrix::zero(k);
    const PairSumResult r = build_pair_sum(z, z);
    const CMatrix sum = r.q * r.p + r.q_prime * r.p_prime;
    CHECK(sum.max_abs() <= 1e-15);
    CHECK(verify_pair_sum(r, z, z, 1e-12).passed);
  }
}

TEST_CASE("boundary corner (b, a) for m = 3") {
  const double a = -5.0 / 72.0;
  const double b = 7.0 / 72.0;
  const auto z1 = scalar(3, b);
  const auto z2 = scalar(3, a);
  const PairSumReport rep = verify_pair_sum(build_pair_sum(z1, z2), z1, z2, 1e-9);
  CHECK(rep.passed);
  CHECK(rep.sum_defect <= 1e-9);
}

TEST_CASE("random commuting pairs") {
  auto g = rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 8;
    const CommutingPair cp = random_commuting_pair(g, dim, 0.25);
    const PairSumResult r = build_pair_sum(cp.z1, cp.z2);
    const PairSumReport rep = verify_pair_sum(r, cp.z1, cp.z2, 1e-10);
    CHECK(rep.passed);
    CHECK(rep.sum_defect <= 1e-10);
    CHECK(rep.worst_projection_defect() <= 1e-10);
  }
}

TEST_CASE("tampering is detected") {
  auto g = rng(22);
  const CommutingPair cp = random_commuting_pair(g, 4, 0.0);
  PairSumResult r = build_pair_sum(cp.z1, cp.z2);
  r.q(1, 2) += 1e-3;
  const PairSumReport rep = verify_pair_sum(r, cp.z1, cp.z2, 1e-10);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.summary().empty());
}

TEST_CASE("joint point outside A is named") {
  const auto z1 = scalar(2, 0.6);
  const auto z2 = scalar(2, 0.6);
  try {
    build_pair_sum(z1, z2);
    FAIL("expected a region error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::Region);
    CHECK(std::string(e.what()).find("pair 0") != std::string::npos);
  }
}

TEST_CASE("non-commuting input") {
  const std::vector<double> a{0.1, 0.0, 0.0, 0.0};
  const std::vector<double> b{0.0, 0.1, 0.1, 0.0};
  try {
    build_pair_sum(HermitianMatrix(CMatrix::from_real(2, 2, a)),
                   HermitianMatrix(CMatrix::from_real(2, 2, b)));
    FAIL("expected a domain error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}
