#include "qpsum/error.hpp"
#include "qpsum/fileio.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

using namespace qpsum;

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

std::string temp_path(const std::string &name) {
  return (std::filesystem::temp_directory_path() / ("qpsum_fileio_" + name)).string();
}
} // namespace

TEST_CASE("real matrix input") {
  const auto s = parse_spectral_input(R"({"dim": 2, "complex": false, "data": [[1, 0], [0, 2]]})");
  REQUIRE(s.label_count() == 2);
  CHECK(s.lambda(0) == doctest::Approx(1.0));
  CHECK(s.lambda(1) == doctest::Approx(2.0));
  REQUIRE(s.rotation.has_value());
}

TEST_CASE("complex matrix input") {
  // [[1, -i], [i, 1]] has eigenvalues 0 and 2
  const auto s = parse_spectral_input(
      R"({"dim": 2, "complex": true, "data": [[[1, 0], [0, -1]], [[0, 1], [1, 0]]]})");
  REQUIRE(s.label_count() == 2);
  CHECK(std::abs(s.lambda(0)) <= 1e-14);
  CHECK(s.lambda(1) == doctest::Approx(2.0));
  CHECK((s.reconstruct() - parse_matrix(R"({"dim": 2, "complex": true,
      "data": [[[1, 0], [0, -1]], [[0, 1], [1, 0]]]})").matrix()).max_abs() <= 1e-14);
}

TEST_CASE("spectrum input") {
  CHECK(parse_spectral_input(R"({"spectrum": [0.5, -0.1]})").eigenvalues ==
        std::vector<double>{-0.1, 0.5});
  CHECK(parse_spectral_input("[3, 3, 1]").eigenvalues == std::vector<double>{1.0, 3.0});
}

TEST_CASE("bad input") {
  CHECK(kind_of([] { parse_spectral_input("{"); }) == ErrorKind::Format);
  CHECK(kind_of([] { parse_spectral_input(R"({"dim": 2, "complex": false, "data": [[1, 0]]})"); }) ==
        ErrorKind::Format);
  CHECK(kind_of([] { parse_spectral_input(R"({"dim": 2, "complex": false, "data": [[1, 1], [0, 1]]})"); }) ==
        ErrorKind::Format);
  CHECK(kind_of([] { parse_spectral_input(R"({"spectrum": []})"); }) == ErrorKind::Format);
  CHECK(kind_of([] { parse_spectral_input(R"({"spectrum": ["a"]})"); }) == ErrorKind::Format);
  CHECK(kind_of([] { load_spectral_input("/nonexistent/qpsum/input.json"); }) == ErrorKind::Io);
}

TEST_CASE("decomposition round trip is bit exact and deterministic") {
  const auto pres = parse_spectral_input(R"({"spectrum": [-0.2, 0.1, 0.3333333333333333, 5.9]})");
  const Decomposition d = decompose(pres, 8);
  const std::string text = decomposition_to_json(d);
  CHECK(text == decomposition_to_json(decompose(pres, 8)));
  const Decomposition back = decomposition_from_json(text);
  CHECK(back.n == d.n);
  CHECK(back.m == d.m);
  CHECK(back.a == d.a);
  CHECK(back.b == d.b);
  CHECK(back.spectrum.eigenvalues == d.spectrum.eigenvalues);
  REQUIRE(back.pairs.size() == d.pairs.size());
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    REQUIRE(back.pairs[i].p.rules().size() == d.pairs[i].p.rules().size());
    for (std::size_t r = 0; r < d.pairs[i].p.rules().size(); ++r) {
      CHECK(back.pairs[i].p.rules()[r].mat == d.pairs[i].p.rules()[r].mat);
      CHECK(back.pairs[i].q.rules()[r].mat == d.pairs[i].q.rules()[r].mat);
      CHECK(back.pairs[i].q.rules()[r].source == d.pairs[i].q.rules()[r].source);
      CHECK(back.pairs[i].q.rules()[r].target == d.pairs[i].q.rules()[r].target);
    }
  }
  CHECK(decomposition_to_json(back) == text);
  CHECK(verify_decomposition(back, 32, 1e-9).passed);
}

TEST_CASE("matrix input keeps its rotation through a file") {
  const auto pres = parse_spectral_input(
      R"({"dim": 3, "complex": false, "data": [[1, 0.5, 0], [0.5, 1, 0], [0, 0, 0.2]]})");
  const Decomposition d = decompose(pres, 6);
  const std::string path = temp_path("rot.json");
  save_decomposition(d, path);
  const Decomposition back = load_decomposition(path);
  std::remove(path.c_str());
  REQUIRE(back.spectrum.rotation.has_value());
  CHECK((back.spectrum.reconstruct() - d.spectrum.reconstruct()).max_abs() == 0.0);
  CHECK(back.spectrum.column_labels == d.spectrum.column_labels);
}

TEST_CASE("inconsistent headers are rejected") {
  const Decomposition d = decompose(SpectralPresentation::from_values({0.5}), 4);
  std::string text = decomposition_to_json(d);
  const auto pos = text.find("\"n\": 4");
  REQUIRE(pos != std::string::npos);
  std::string bad = text;
  bad.replace(pos, 6, "\"n\": 6");
  CHECK(kind_of([&] { decomposition_from_json(bad); }) == ErrorKind::Format);
  CHECK(kind_of([] { decomposition_from_json("{}"); }) == ErrorKind::Format);
  CHECK(kind_of([] { decomposition_from_json("[1, 2]"); }) == ErrorKind::Format);
  CHECK(kind_of([] { load_decomposition("/nonexistent/qpsum/dec.json"); }) == ErrorKind::Io);
}
