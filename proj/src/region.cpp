#include "qpsum/region.hpp"

#include "qpsum/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qpsum {

namespace {

constexpr double kBoxLow = -0.125;
constexpr double kBoxHigh = 1.0;

void require_finite(double v, const char *what) {
  if (!std::isfinite(v))
    fail(ErrorKind::Domain, std::string(what) + " must be finite");
}

// Double comparisons use (p/q) with p, q exact in double, so each threshold
// is the correctly rounded value of the rational bound.
double corridor_low(long long n) {
  return -static_cast<double>((n - 4) * (n - 4)) / (8.0 * static_cast<double>(n));
}

double extremal_threshold(long long n) {
  return -static_cast<double>((n - 2) * (n - 2)) / (8.0 * static_cast<double>(n));
}

bool corridor_holds(double lmin, double lmax, long long n) {
  return lmin >= corridor_low(n) && lmax <= static_cast<double>(n - 2);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

} // namespace

const char *to_string(Check c) noexcept {
  switch (c) {
  case Check::Fail:
    return "fail";
  case Check::Pass:
    return "pass";
  case Check::NotApplicable:
    return "n/a";
  }
  return "?";
}

bool in_region_a(RegionPoint p, double tol) {
  const double s = p.sum();
  const double d = p.diff();
  return d * d <= s + tol && s <= 1.0 + tol;
}

std::pair<double, double> region_x_range() noexcept { return {-0.125, 1.0}; }

Rational inf_linear_functional_exact(int n) {
  if (n < 2)
    fail(ErrorKind::Domain, "inf_linear_functional needs n >= 2");
  const std::int64_t k = n - 2;
  return Rational(-k * k, 8 * static_cast<std::int64_t>(n));
}

double inf_linear_functional(int n) {
  return inf_linear_functional_exact(n).to_double();
}

double inf_linear_functional_bruteforce(int n, int grid) {
  if (n < 2)
    fail(ErrorKind::Domain, "brute force needs n >= 2");
  if (grid < 100)
    fail(ErrorKind::Domain, "brute force needs grid >= 100");
  const double step = (kBoxHigh - kBoxLow) / (grid - 1);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double x = kBoxLow + i * step;
    for (int j = 0; j < grid; ++j) {
      const double y = kBoxLow + j * step;
      if (in_region_a({x, y}))
        best = std::min(best, y + (n - 1) * x);
    }
  }
  return best;
}

std::pair<double, double> region_x_range_bruteforce(int grid) {
  if (grid < 2)
    fail(ErrorKind::Domain, "grid must have at least two samples");
  const double step = (kBoxHigh - kBoxLow) / (grid - 1);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < grid; ++i) {
    const double x = kBoxLow + i * step;
    for (int j = 0; j < grid; ++j) {
      const double y = kBoxLow + j * step;
      if (in_region_a({x, y})) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
  }
  return {lo, hi};
}

CorridorConstants corridor_constants(int n) {
  if (n < 4 || n % 2 != 0)
    fail(ErrorKind::Domain,
         "corridor constants need an even n >= 4, got " + std::to_string(n));
  const std::int64_t nn = n;
  const std::int64_t m = nn / 2;
  CorridorConstants c;
  c.m = static_cast<int>(m);
  c.low = Rational(-(nn - 4) * (nn - 4), 8 * nn);
  c.high = Rational(nn - 2);
  c.a = Rational(-(m - 2) * (m + 2), 8 * m * m);
  c.b = Rational((m - 2) * (3 * m - 2), 8 * m * m);
  return c;
}

BoundTable bound_table(int n) {
  if (n < 1)
    fail(ErrorKind::Domain, "bound table needs n >= 1");
  const std::int64_t nn = n;
  BoundTable t;
  t.n = n;
  t.norm_low = Rational(-nn, 8);
  t.norm_high = Rational(nn);
  t.extremal_threshold = Rational(-(nn - 2) * (nn - 2), 8 * nn);
  if (n >= 4 && n % 2 == 0)
    t.corridor = corridor_constants(n);
  return t;
}

FeasibilityVerdict check_feasibility(double lambda_min, double lambda_max,
                                     int n) {
  require_finite(lambda_min, "lambda_min");
  require_finite(lambda_max, "lambda_max");
  if (lambda_min > lambda_max)
    fail(ErrorKind::Domain, "lambda_min exceeds lambda_max");
  if (n < 1)
    fail(ErrorKind::Domain, "n must be positive");

  FeasibilityVerdict v;
  v.n = n;
  const long long nn = n;
  const double norm_low = -static_cast<double>(nn) / 8.0;
  const double norm_high = static_cast<double>(nn);

  v.necessary_norm = (lambda_min >= norm_low && lambda_max <= norm_high)
                         ? Check::Pass
                         : Check::Fail;
  if (v.necessary_norm == Check::Fail) {
    v.messages.push_back("necessary norm bound violated: spectrum [" +
                         fmt(lambda_min) + ", " + fmt(lambda_max) +
                         "] not inside [-n/8, n] = [" + fmt(norm_low) + ", " +
                         fmt(norm_high) + "]");
  }

  const double thr = extremal_threshold(nn);
  v.necessary_extremal = lambda_max >= thr ? Check::Pass : Check::Fail;
  if (v.necessary_extremal == Check::Fail) {
    v.messages.push_back(
        "necessary extremal bound violated: lambda_max = " + fmt(lambda_max) +
        " < -(n-2)^2/(8n) = " + fmt(thr) +
        "; no sum of n products QP is bounded above by this value");
  }

  if (n < 4 || n % 2 != 0) {
    v.sufficient_corridor = Check::NotApplicable;
    v.messages.push_back("constructive corridor defined only for even n >= 4");
  } else if (corridor_holds(lambda_min, lambda_max, nn)) {
    v.sufficient_corridor = Check::Pass;
  } else {
    v.sufficient_corridor = Check::Fail;
    v.messages.push_back("constructive corridor [-(n-4)^2/(8n), n-2] = [" +
                         fmt(corridor_low(nn)) + ", " + fmt(double(nn - 2)) +
                         "] does not contain the spectrum");
  }
  return v;
}

int min_sufficient_n(double lambda_min, double lambda_max) {
  require_finite(lambda_min, "lambda_min");
  require_finite(lambda_max, "lambda_max");
  if (lambda_min > lambda_max)
    fail(ErrorKind::Domain, "lambda_min exceeds lambda_max");
  // Closed-form start: n >= lambda_max + 2 and, for c = -lambda_min > 0,
  // n >= 4 + 4c + 4 sqrt(c^2 + 2c). Stepped back so rounding never skips
  // the true minimum; the loop below is exact.
  double hint = std::max(4.0, lambda_max + 2.0);
  if (lambda_min < 0.0) {
    const double c = -lambda_min;
    hint = std::max(hint, 4.0 + 4.0 * c + 4.0 * std::sqrt(c * c + 2.0 * c));
  }
  if (hint > 2e9)
    fail(ErrorKind::Domain, "spectrum too wide for an int summand count");
  long long n = static_cast<long long>(hint) - 6;
  n = std::max(4LL, n - n % 2);
  while (!corridor_holds(lambda_min, lambda_max, n))
    n += 2;
  return static_cast<int>(n);
}

int min_necessary_n(double lambda_min, double lambda_max) {
  require_finite(lambda_min, "lambda_min");
  require_finite(lambda_max, "lambda_max");
  if (lambda_min > lambda_max)
    fail(ErrorKind::Domain, "lambda_min exceeds lambda_max");
  const double limit =
      8.0 * (std::abs(lambda_min) + std::abs(lambda_max)) + 64.0;
  if (limit > 2e9)
    fail(ErrorKind::Domain, "spectrum too wide for an int summand count");
  for (long long n = 1; n <= static_cast<long long>(limit); ++n) {
    const bool norm = lambda_min >= -static_cast<double>(n) / 8.0 &&
                      lambda_max <= static_cast<double>(n);
    if (norm && lambda_max >= extremal_threshold(n))
      return static_cast<int>(n);
  }
  fail(ErrorKind::Numeric, "no n passes the necessary bounds");
}

NcBounds nc_bounds(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    fail(ErrorKind::Domain, "nc_bounds needs a finite c > 0");
  NcBounds r;
  r.lower = 2.0 + 4.0 * c + 4.0 * std::sqrt(c * c + c);
  r.upper = 2 * static_cast<long long>(
                    std::ceil(2.0 + 2.0 * c + 2.0 * std::sqrt(c * c + 2.0 * c)));
  if (!(8.0 * c + 8.0 / 3.0 <= std::ceil(r.lower)))
    fail(ErrorKind::Numeric, "8c + 8/3 <= ceil(lower) fails at c = " + fmt(c));
  if (!(static_cast<double>(r.upper) <= 8.0 * c + 10.0))
    fail(ErrorKind::Numeric, "upper <= 8c + 10 fails at c = " + fmt(c));
  return r;
}

RepresentabilityIntervals representability_intervals(int n) {
  if (n < 4 || n % 2 != 0)
    fail(ErrorKind::Domain, "representability intervals need an even n >= 4");
  const long long nn = n;
  RepresentabilityIntervals r;
  r.positive = {static_cast<double>(nn - 2), static_cast<double>(nn)};
  r.negative = {-corridor_low(nn), -extremal_threshold(nn)};
  return r;
}

} // namespace qpsum
