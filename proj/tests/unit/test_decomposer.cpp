#include "qpsum/decomposer.hpp"
#include "qpsum/error.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace qpsum;
using namespace qpsum::testing;

namespace {
ErrorKind kind_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Numeric;
}

SpectralPresentation spectrum(std::vector<double> v) {
  return SpectralPresentation::from_values(std::move(v));
}

Mat2 dot(const Mat2 &a, const Mat2 &b) { return a * b; }
} // namespace

TEST_CASE("sector plans") {
  const SectorPlan full = plan_sectors(spectrum({1.0}), 4);
  CHECK(full.f_full());
  CHECK(full.f_labels() == std::vector<int>{0});
  for (int g = 0; g < 2; ++g) {
    CHECK(full.tilde_cells(g).empty());
    CHECK(full.tilde_pool(g).empty());
    CHECK(full.hat_pool_residues(g).size() == 2);
  }

  const SectorPlan none = plan_sectors(spectrum({0.0}), 4);
  CHECK(none.f_empty());
  for (int g = 0; g < 2; ++g) {
    CHECK(none.hat_cells(g).empty());
    CHECK(none.tilde_pool_residues(g).size() == 2);
  }

  // m = 3: 2b = 7/36, so only 4 is strictly above it
  const SectorPlan mixed = plan_sectors(spectrum({-1.0 / 12.0, 4.0}), 6);
  CHECK(mixed.f_labels() == std::vector<int>{1});
  CHECK_FALSE(mixed.in_f(0));
  for (int g = 0; g < 3; ++g) {
    CHECK(mixed.hat_pool_residues(g) == std::vector<std::int64_t>{g});
    CHECK(mixed.tilde_pool_residues(g) == std::vector<std::int64_t>{g + 3});
    CHECK(mixed.sector(g, 1, g) == Sector::HatPool);
    CHECK(mixed.sector(g, 0, g) == Sector::HatPool);
    CHECK(mixed.sector(g, 0, g + 3) == Sector::TildePool);
    CHECK(mixed.sector(g, 1, (g + 1) % 3) == Sector::HatCell);
    CHECK(mixed.sector(g, 0, (g + 1) % 3) == Sector::TildeCell);
  }
}

TEST_CASE("plan errors") {
  CHECK(kind_of([] { plan_sectors(spectrum({0.0}), 5); }) == ErrorKind::Domain);
  CHECK(kind_of([] { plan_sectors(spectrum({0.0}), 2); }) == ErrorKind::Domain);
  CHECK(kind_of([] { plan_sectors(spectrum({-0.1, 1.0}), 4); }) == ErrorKind::Infeasible);
  CHECK(kind_of([] { plan_sectors(spectrum({2.5}), 4); }) == ErrorKind::Infeasible);
}

TEST_CASE("y values on the pools and cells") {
  const SectorPlan p = plan_sectors(spectrum({1.0}), 4);
  const auto y0 = build_yi_values(p, spectrum({1.0}), 0);
  // F full: pools {0, 2} are hat and carry 0; cells carry lambda / (m - 1)
  CHECK(y0.at({0, 0}) == 0.0);
  CHECK(y0.at({0, 2}) == 0.0);
  CHECK(y0.at({0, 1}) == 1.0);
  CHECK(y0.at({0, 3}) == 1.0);

  const auto pres = spectrum({-0.25, 0.1, 6.0});
  const SectorPlan q = plan_sectors(pres, 8);
  const double two_b = 2.0 * 5.0 / 32.0;
  for (int g = 0; g < 4; ++g) {
    const auto y = build_yi_values(q, pres, g);
    for (int k = 0; k < 3; ++k) {
      for (std::int64_t r : q.tilde_pool_residues(g))
        CHECK(y.at({k, r}) == doctest::Approx(two_b).epsilon(1e-15));
      for (std::int64_t r : q.hat_pool_residues(g))
        CHECK(y.at({k, r}) == 0.0);
    }
  }
}

TEST_CASE("exact telescoping of the y values") {
  for (int m = 2; m <= 10; ++m) {
    const CorridorConstants c = corridor_constants(2 * m);
    const Rational two_b = Rational(2) * c.b;
    const std::vector<Rational> lambdas{c.low, Rational(0), two_b, two_b + Rational(1, 97),
                                        Rational(7, 5), c.high};
    std::vector<bool> mixed;
    for (const auto &l : lambdas)
      mixed.push_back(l > two_b);
    for (const auto &in_f : {mixed, std::vector<bool>(lambdas.size(), false),
                             std::vector<bool>(lambdas.size(), true)}) {
      const SectorPlan plan(m, in_f);
      for (int k = 0; k < static_cast<int>(lambdas.size()); ++k)
        for (std::int64_t r = 0; r < 2 * m; ++r) {
          Rational total;
          for (int g = 0; g < m; ++g)
            total += yi_cell_value(plan, g, k, r, lambdas[k], two_b);
          CHECK(total == lambdas[k]);
        }
    }
  }
}

TEST_CASE("scalar one with four summands") {
  const Decomposition d = decompose(spectrum({1.0}), 4);
  REQUIRE(d.pairs.size() == 4);
  const Mat2 half{{0.5, 0.5, 0.5, 0.5}};
  for (int g = 0; g < 2; ++g) {
    const auto &pair = d.pairs[2 * g];
    REQUIRE_FALSE(pair.p.rules().empty());
    for (std::size_t i = 0; i < pair.p.rules().size(); ++i) {
      CHECK((pair.p.rules()[i].mat - half).max_abs() <= 1e-15);
      CHECK((pair.q.rules()[i].mat - Mat2::diag(0.0, 1.0)).max_abs() <= 1e-15);
    }
  }
  const auto rep = verify_decomposition(d, 16, 1e-12);
  CHECK(rep.passed);
  CHECK(rep.max_entry_defect <= 1e-12);
}

TEST_CASE("zero operator") {
  const Decomposition d = decompose(spectrum({0.0}), 4);
  for (const auto &pair : d.pairs)
    for (std::size_t i = 0; i < pair.p.rules().size(); ++i) {
      const Mat2 qp = dot(pair.q.rules()[i].mat, pair.p.rules()[i].mat);
      CHECK(qp.max_abs() <= 1e-15);
    }
  CHECK(verify_decomposition(d, 8, 1e-12).passed);
}

TEST_CASE("corridor endpoints") {
  CHECK(verify_decomposition(decompose(spectrum({0.0, 2.0}), 4), 16, 1e-9).passed);
  for (int n : {6, 8, 10}) {
    CAPTURE(n);
    const CorridorConstants c = corridor_constants(n);
    const Decomposition d = decompose(spectrum({c.low.to_double(), c.high.to_double()}), n);
    const auto rep = verify_decomposition(d, 4 * n, 1e-9);
    CHECK(rep.passed);
    CHECK(group_offdiag_defect(d) <= 1e-12);
  }
}

TEST_CASE("block points sit in the expected sectors") {
  auto g = rng(41);
  for (int n : {4, 6, 8, 10}) {
    const CorridorConstants c = corridor_constants(n);
    const double a = c.a.to_double(), b = c.b.to_double();
    std::vector<double> vals;
    for (int i = 0; i < 5; ++i)
      vals.push_back(uniform(g, c.low.to_double(), c.high.to_double()));
    const Decomposition d = decompose(spectrum(vals), n);
    for (std::size_t i = 0; i < d.pairs.size(); i += 2) {
      const auto &pair = d.pairs[i];
      for (std::size_t r = 0; r < pair.p.rules().size(); ++r) {
        const Mat2 qp = dot(pair.q.rules()[r].mat, pair.p.rules()[r].mat);
        const RegionPoint pt{qp(0, 0), qp(1, 1)};
        CHECK(in_region_a(pt, kRegionTolerance));
        const bool hat = std::abs(pt.x) <= 1e-12;
        const bool tilde = std::abs(pt.x - b) <= 1e-12;
        CHECK((hat || tilde));
        if (hat && !tilde) {
          CHECK(pt.y >= -1e-12);
          CHECK(pt.y <= 1.0 + 1e-12);
        } else if (tilde && !hat) {
          CHECK(pt.y >= a - kRegionTolerance);
          CHECK(pt.y <= 1.0 - b + kRegionTolerance);
        }
      }
    }
  }
}

TEST_CASE("random matrix input") {
  auto g = rng(42);
  std::vector<double> vals(6);
  for (auto &v : vals)
    v = uniform(g, -0.25, 6.0);
  const HermitianMatrix x0(conjugate_diagonal(random_unitary(g, 6), vals), 1e-10);
  const Decomposition d = decompose(inflate(x0), 8);
  CHECK(verify_decomposition(d, 32, 1e-9).passed);
}

TEST_CASE("window size does not change the defect") {
  const Decomposition d = decompose(spectrum({-0.2, 0.3, 1.1, 5.5}), 8);
  const double d8 = verify_decomposition(d, 8, 1e-9).max_entry_defect;
  const double d16 = verify_decomposition(d, 16, 1e-9).max_entry_defect;
  const double d32 = verify_decomposition(d, 32, 1e-9).max_entry_defect;
  CHECK(d16 <= d8);
  CHECK(d32 <= d8);
  CHECK(kind_of([&] { verify_decomposition(d, 7, 1e-9); }) == ErrorKind::Domain);
}

TEST_CASE("threaded verification matches serial") {
  const Decomposition d = decompose(spectrum({-0.3, 0.0, 0.7, 2.0, 7.5}), 10);
  const auto serial = verify_decomposition(d, 40, 1e-9, 1);
  const auto threaded = verify_decomposition(d, 40, 1e-9, 4);
  CHECK(serial.max_entry_defect == threaded.max_entry_defect);
  CHECK(serial.worst_row == threaded.worst_row);
  CHECK(serial.worst_col == threaded.worst_col);
  CHECK(serial.to_text() == threaded.to_text());
}

TEST_CASE("tampering is located") {
  Decomposition d = decompose(spectrum({0.5, 1.5}), 6);
  auto rules = d.pairs[3].p.rules();
  rules[2].mat(0, 1) += 1e-3;
  d.pairs[3].p = RuleOperator(rules);
  const auto rep = verify_decomposition(d, 24, 1e-9);
  CHECK_FALSE(rep.passed);
  REQUIRE_FALSE(rep.projection_failures.empty());
  CHECK(rep.projection_failures[0].pair == 3);
  CHECK(rep.projection_failures[0].op == 'P');
  CHECK(rep.projection_failures[0].rule == 2);
  CHECK(rep.to_text().find("pair 4 P rule 2") != std::string::npos);
}

TEST_CASE("coverage audit catches a missing rule") {
  Decomposition d = decompose(spectrum({0.5, 1.5}), 6);
  auto rules = d.pairs[0].q.rules();
  rules.pop_back();
  d.pairs[0].q = RuleOperator(rules);
  const auto rep = verify_decomposition(d, 24, 1e-9);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.coverage_failures.empty());
}
