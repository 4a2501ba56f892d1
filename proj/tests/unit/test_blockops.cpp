#include "qpsum/blockops.hpp"
#include "qpsum/error.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

using namespace qpsum;
using namespace qpsum::testing;

TEST_CASE("spectral presentation from values") {
  const auto s = SpectralPresentation::from_values({2.0, -1.0, 2.0, 0.5});
  CHECK(s.eigenvalues == std::vector<double>{-1.0, 0.5, 2.0});
  CHECK(s.min() == -1.0);
  CHECK(s.max() == 2.0);
  CHECK_FALSE(s.rotation.has_value());
  CHECK_THROWS_AS(SpectralPresentation::from_values({}), Error);
  CHECK_THROWS_AS(SpectralPresentation::from_values({NAN}), Error);
}

TEST_CASE("inflate") {
  const auto s = inflate(HermitianMatrix::diagonal(std::vector<double>{1.0, 1.0, 2.0}));
  CHECK(s.label_count() == 2);
  CHECK(s.lambda(0) == doctest::Approx(1.0));
  CHECK(s.lambda(1) == doctest::Approx(2.0));
  const auto one = inflate(HermitianMatrix::diagonal(std::vector<double>{1.0}));
  CHECK(one.label_count() == 1);
  CHECK(one.lambda(0) == doctest::Approx(1.0));

  auto g = rng(31);
  const std::vector<double> vals{-0.3, -0.3, -0.3, 1.7, 1.7, 1.7};
  const HermitianMatrix x0(conjugate_diagonal(random_unitary(g, 6), vals), 1e-10);
  const auto p = inflate(x0);
  CHECK(p.label_count() == 2);
  REQUIRE(p.rotation.has_value());
  CHECK((p.reconstruct() - x0.matrix()).max_abs() <= 1e-10);
}

TEST_CASE("split_family") {
  const IndexFamily f{0, 0, 1};
  const auto parts = split_family(f, 3);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == IndexFamily{0, 0, 3});
  CHECK(parts[1] == IndexFamily{0, 1, 3});
  CHECK(parts[2] == IndexFamily{0, 2, 3});
  const IndexFamily g{2, 3, 8};
  CHECK(split_family(g, 1) == std::vector<IndexFamily>{g});
  // partition property
  const auto sub = split_family(g, 5);
  for (std::int64_t t = 0; t < 2000; ++t) {
    int hits = 0;
    for (const auto &s : sub)
      hits += s.contains({2, t});
    CHECK(hits == (g.contains({2, t}) ? 1 : 0));
  }
}

TEST_CASE("match_families") {
  const auto one = match_families({{0, 0, 1}}, {{1, 0, 1}});
  REQUIRE(one.size() == 1);
  CHECK(one[0].first.element(7) == Index{0, 7});
  CHECK(one[0].second.element(7) == Index{1, 7});

  CHECK(match_families({}, {}).empty());
  try {
    match_families({{0, 0, 1}}, {});
    FAIL("expected a dimension error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::Dimension);
  }

  const std::vector<IndexFamily> sources{{0, 0, 2}, {0, 1, 2}};
  const std::vector<IndexFamily> targets{{1, 0, 3}, {1, 1, 3}, {1, 2, 3}};
  const auto pairs = match_families(sources, targets);
  CHECK(pairs.size() == 6);
  // bijection between the unions on a finite stretch
  std::map<Index, Index> forward;
  std::set<Index> images;
  for (const auto &[src, dst] : pairs)
    for (std::int64_t s = 0; src.element(s).copy < 1000; ++s) {
      CHECK(forward.emplace(src.element(s), dst.element(s)).second);
      CHECK(images.insert(dst.element(s)).second);
    }
  for (std::int64_t t = 0; t < 1000; ++t)
    CHECK(forward.count({0, t}) == 1);
  // images near the cut-off may come from sources past it
  for (std::int64_t t = 0; t < 990; ++t)
    CHECK(images.count({1, t}) == 1);
}

TEST_CASE("rule operator entries") {
  const RuleOperator op({BlockRule{{0, 0, 2}, {0, 1, 2}, Mat2::diag(1.0, 0.0)}});
  CHECK(op.entry({0, 4}, {0, 4}) == 1.0);
  CHECK(op.entry({0, 5}, {0, 5}) == 0.0);
  CHECK(op.entry({0, 0}, {0, 2}) == 0.0);  // different blocks
  CHECK(op.entry({1, 0}, {1, 0}) == 0.0);  // uncovered label

  const Mat2 m{{0.25, 0.4, 0.4, 0.75}};
  const RuleOperator b({BlockRule{{0, 0, 1}, {1, 0, 1}, m}});
  CHECK(b.entry({0, 3}, {1, 3}) == 0.4);
  CHECK(b.entry({1, 3}, {0, 3}) == 0.4);
  CHECK(b.entry({1, 3}, {1, 3}) == 0.75);
  CHECK(b.entry({0, 3}, {1, 4}) == 0.0);
  const auto row = b.row({1, 9});
  CHECK(row.size() == 2);
}

TEST_CASE("double coverage is malformed") {
  const RuleOperator op({BlockRule{{0, 0, 1}, {1, 0, 1}, Mat2::diag(1.0, 0.0)},
                         BlockRule{{0, 0, 2}, {2, 0, 2}, Mat2::diag(1.0, 0.0)}});
  try {
    op.entry({0, 2}, {0, 2});
    FAIL("expected a malformed-operator error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::Malformed);
  }
  CHECK(op.locate({0, 2}).size() == 2);
  CHECK(op.locate({0, 1}).size() == 1);
}

TEST_CASE("window matrices") {
  const auto pres = SpectralPresentation::from_values({0.0, 1.0});
  const CMatrix zero = window_matrix(RuleOperator{}, pres, 4);
  CHECK(zero.rows() == 8);
  CHECK(zero.max_abs() == 0.0);

  const RuleOperator id({BlockRule{{0, 0, 1}, {1, 0, 1}, Mat2::diag(1.0, 1.0)}});
  CHECK((window_matrix(id, pres, 4) - CMatrix::identity(8)).max_abs() == 0.0);

  const auto idx = window_indices(2, 3);
  REQUIRE(idx.size() == 6);
  CHECK(idx[1] == Index{1, 0});
  CHECK(idx[2] == Index{0, 1});
}

TEST_CASE("sparse product rows match dense products") {
  const auto pres = SpectralPresentation::from_values({0.0, 1.0, 2.0});
  const Mat2 p{{0.25, std::sqrt(3.0) / 4, std::sqrt(3.0) / 4, 0.75}};
  const Mat2 q{{0.5, 0.5, 0.5, 0.5}};
  const RuleOperator left({BlockRule{{0, 0, 1}, {1, 0, 1}, q},
                           BlockRule{{2, 0, 2}, {2, 1, 2}, Mat2::diag(1.0, 0.0)}});
  const RuleOperator right({BlockRule{{0, 0, 2}, {2, 1, 2}, p},
                            BlockRule{{0, 1, 2}, {1, 0, 2}, p},
                            BlockRule{{2, 0, 2}, {1, 1, 2}, q}});
  const std::int64_t copies = 12;
  const CMatrix dense = window_matrix(left, pres, copies) * window_matrix(right, pres, copies);
  const auto idx = window_indices(3, copies);
  std::map<Index, std::size_t> pos;
  for (std::size_t i = 0; i < idx.size(); ++i)
    pos[idx[i]] = i;
  // rows whose partners stay inside the window compress exactly
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i].copy >= copies - 2)
      continue;
    std::vector<double> row(idx.size(), 0.0);
    for (const auto &t : product_row(left, right, idx[i]))
      if (auto it = pos.find(t.column); it != pos.end())
        row[it->second] += t.value;
    for (std::size_t j = 0; j < idx.size(); ++j)
      CHECK(std::abs(row[j] - dense(i, j).real()) <= 1e-15);
  }
}
