#ifndef QPSUM_REGION_HPP
#define QPSUM_REGION_HPP

// Geometry of the attainable set
//
//   A = { (x, y) : (x - y)^2 <= x + y <= 1 },
//
// the diagonal pairs (QP e1.e1, QP e2.e2) of compositions of rank-one
// projections in dimension two, together with the closed-form bound and
// feasibility calculators that follow from it.

#include "qpsum/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qpsum {

/// Membership slack used wherever constructed points may sit exactly on the
/// boundary of A (the decomposer and the projection factory).
inline constexpr double kRegionTolerance = 1e-9;

struct RegionPoint {
  double x = 0.0;
  double y = 0.0;

  double sum() const noexcept { return x + y; }
  double diff() const noexcept { return x - y; }
};

bool in_region_a(RegionPoint p, double tol = 0.0);

/// Infimum and supremum of x over A. Both are attained: the minimum at
/// (-1/8, 3/8), the maximum at (1, 0).
std::pair<double, double> region_x_range() noexcept;

/// inf { y + (n-1) x : (x, y) in A } = -(n-2)^2 / (8n), n >= 2.
double inf_linear_functional(int n);
Rational inf_linear_functional_exact(int n);

/// Grid search of the same infimum over grid x grid samples of
/// [-1/8, 1]^2 filtered by membership in A. Independent of the closed form.
double inf_linear_functional_bruteforce(int n, int grid);

/// Grid minimum and maximum of the x coordinate over A.
std::pair<double, double> region_x_range_bruteforce(int grid);

/// Constructive-corridor constants, present only for even n >= 4.
struct CorridorConstants {
  int m = 0;            // n / 2
  Rational low;         // -(n-4)^2 / (8n)
  Rational high;        // n - 2
  Rational a;           // -(m-2)(m+2) / (8 m^2)
  Rational b;           // (m-2)(3m-2) / (8 m^2)
};

struct BoundTable {
  int n = 0;
  Rational norm_low;           // -n/8
  Rational norm_high;          // n
  Rational extremal_threshold; // -(n-2)^2 / (8n)
  std::optional<CorridorConstants> corridor;
};

BoundTable bound_table(int n);
CorridorConstants corridor_constants(int n);

enum class Check { Fail, Pass, NotApplicable };

const char *to_string(Check c) noexcept;

struct FeasibilityVerdict {
  int n = 0;
  Check necessary_norm = Check::Fail;      // -n/8 <= spectrum <= n
  Check necessary_extremal = Check::Fail;  // lambda_max >= -(n-2)^2/(8n)
  Check sufficient_corridor = Check::NotApplicable;
  std::vector<std::string> messages;

  bool representable_by_construction() const noexcept {
    return sufficient_corridor == Check::Pass;
  }
};

FeasibilityVerdict check_feasibility(double lambda_min, double lambda_max,
                                     int n);

/// Smallest even n >= 4 whose corridor contains [lambda_min, lambda_max].
int min_sufficient_n(double lambda_min, double lambda_max);

/// Smallest n (any parity) passing both necessary checks.
int min_necessary_n(double lambda_min, double lambda_max);

struct NcBounds {
  double lower = 0.0;     // 2 + 4c + 4 sqrt(c^2 + c)
  long long upper = 0;    // 2 ceil(2 + 2c + 2 sqrt(c^2 + 2c))
};

/// Bounds on the number of summands needed for every Hermitian x with
/// norm at most c. Also checks 8c + 8/3 <= ceil(lower) and
/// upper <= 8c + 10, raising ErrorKind::Numeric if either breaks.
NcBounds nc_bounds(double c);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct RepresentabilityIntervals {
  Interval positive;  // largest C with 0 <= x <= C always representable
  Interval negative;  // largest c with -c <= x <= 0 always representable
};

/// Interval estimates for the two extremal constants, n even and >= 4.
RepresentabilityIntervals representability_intervals(int n);

} // namespace qpsum

#endif
