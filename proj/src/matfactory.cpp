#include "qpsum/matfactory.hpp"

#include "qpsum/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qpsum {

namespace {

constexpr double kOriginCut = 1e-15;

double clamped_sqrt(double radicand, double tol, RegionPoint p,
                    const char *name) {
  if (radicand >= 0.0)
    return std::sqrt(radicand);
  if (radicand >= -tol)
    return 0.0;
  std::ostringstream os;
  os.precision(17);
  os << "point (" << p.x << ", " << p.y << ") outside A: " << name << " = "
     << radicand;
  fail(ErrorKind::Region, os.str());
}

} // namespace

double Mat2::max_abs() const noexcept {
  double m = 0.0;
  for (double e : v)
    m = std::max(m, std::abs(e));
  return m;
}

Mat2 operator*(const Mat2 &l, const Mat2 &r) noexcept {
  return Mat2{{l(0, 0) * r(0, 0) + l(0, 1) * r(1, 0),
               l(0, 0) * r(0, 1) + l(0, 1) * r(1, 1),
               l(1, 0) * r(0, 0) + l(1, 1) * r(1, 0),
               l(1, 0) * r(0, 1) + l(1, 1) * r(1, 1)}};
}

Mat2 operator+(const Mat2 &l, const Mat2 &r) noexcept {
  Mat2 out;
  for (int i = 0; i < 4; ++i)
    out.v[i] = l.v[i] + r.v[i];
  return out;
}

Mat2 operator-(const Mat2 &l, const Mat2 &r) noexcept {
  Mat2 out;
  for (int i = 0; i < 4; ++i)
    out.v[i] = l.v[i] - r.v[i];
  return out;
}

ProjectionPair2x2 make_pq(RegionPoint point, double tol) {
  if (!std::isfinite(point.x) || !std::isfinite(point.y))
    fail(ErrorKind::Region, "non-finite point");
  if (std::hypot(point.x, point.y) < kOriginCut)
    return {Mat2::diag(1.0, 0.0), Mat2::diag(0.0, 1.0), point};

  const double s = point.sum();
  const double d = point.diff();
  if (!in_region_a(point, tol) || s <= 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "point (" << point.x << ", " << point.y
       << ") outside A: need (x-y)^2 <= x+y <= 1 and x+y > 0";
    fail(ErrorKind::Region, os.str());
  }

  const double r1 = clamped_sqrt(s - d * d, tol, point, "x+y-(x-y)^2");
  const double r2 = clamped_sqrt(1.0 / s - 1.0, tol, point, "1/(x+y)-1");
  const double cross = r1 * r2;

  const double p_off = (r1 - d * r2) / 2.0;
  const double q_off = (r1 + d * r2) / 2.0;
  ProjectionPair2x2 out;
  out.p = Mat2{{(1.0 + d + cross) / 2.0, p_off, p_off, (1.0 - d - cross) / 2.0}};
  out.q = Mat2{{(1.0 + d - cross) / 2.0, q_off, q_off, (1.0 - d + cross) / 2.0}};
  out.source = point;
  return out;
}

Mat2 conjugate_by_sign(const Mat2 &m) noexcept {
  return Mat2{{m(0, 0), -m(0, 1), -m(1, 0), m(1, 1)}};
}

std::vector<ProjectionPair2x2> sharpness_family(int n) {
  if (n < 2 || n % 2 != 0)
    fail(ErrorKind::Domain,
         "sharpness family needs an even n >= 2, got " + std::to_string(n));
  const ProjectionPair2x2 base = make_pq({-0.125, 0.375});
  const ProjectionPair2x2 flipped{conjugate_by_sign(base.p),
                                  conjugate_by_sign(base.q), base.source};
  std::vector<ProjectionPair2x2> family;
  family.reserve(n);
  for (int i = 0; i < n; ++i)
    family.push_back(i % 2 == 0 ? base : flipped);
  return family;
}

Mat2 sharpness_sum(const std::vector<ProjectionPair2x2> &family) noexcept {
  Mat2 sum;
  for (const auto &pair : family)
    sum = sum + pair.qp();
  return sum;
}

bool verify_rank1_projection(const Mat2 &m, double tol) {
  return (m * m - m).max_abs() <= tol && (m - m.transpose()).max_abs() <= tol &&
         std::abs(m.trace() - 1.0) <= tol && std::abs(m.det()) <= tol;
}

bool is_block_projection(const Mat2 &m, double tol) {
  if (verify_rank1_projection(m, tol))
    return true;
  for (double d0 : {0.0, 1.0})
    for (double d1 : {0.0, 1.0})
      if ((m - Mat2::diag(d0, d1)).max_abs() <= tol)
        return true;
  return false;
}

} // namespace qpsum
