#include "qpsum/fileio.hpp"

#include "qpsum/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qpsum {

using nlohmann::json;

namespace {

constexpr const char *kFormatTag = "qpsum-decomposition";
constexpr int kFormatVersion = 1;

json parse_json(const std::string &text) {
  try {
    return json::parse(text);
  } catch (const json::exception &e) {
    fail(ErrorKind::Format, std::string("invalid JSON: ") + e.what());
  }
}

double as_double(const json &j, const char *what) {
  if (!j.is_number())
    fail(ErrorKind::Format, std::string(what) + " must be a number");
  return j.get<double>();
}

std::int64_t as_int(const json &j, const char *what) {
  if (!j.is_number_integer())
    fail(ErrorKind::Format, std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

const json &field(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(ErrorKind::Format, std::string("missing field '") + key + "'");
  return *it;
}

CMatrix matrix_from_json(const json &doc) {
  if (!doc.is_object())
    fail(ErrorKind::Format, "matrix document must be an object");
  const std::int64_t dim = as_int(field(doc, "dim"), "dim");
  if (dim < 1)
    fail(ErrorKind::Format, "dim must be positive");
  const json &complex_flag = field(doc, "complex");
  if (!complex_flag.is_boolean())
    fail(ErrorKind::Format, "'complex' must be true or false");
  const bool is_complex = complex_flag.get<bool>();
  const json &data = field(doc, "data");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(dim))
    fail(ErrorKind::Format, "data must have dim rows");
  CMatrix m(dim, dim);
  for (std::size_t r = 0; r < data.size(); ++r) {
    const json &row = data[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
      fail(ErrorKind::Format, "row " + std::to_string(r) + " must have dim entries");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (is_complex) {
        const json &e = row[c];
        if (!e.is_array() || e.size() != 2)
          fail(ErrorKind::Format, "complex entries must be [re, im] pairs");
        m(r, c) = cplx(as_double(e[0], "real part"), as_double(e[1], "imaginary part"));
      } else {
        m(r, c) = as_double(row[c], "matrix entry");
      }
    }
  }
  return m;
}

json matrix_json(const CMatrix &m) {
  const bool real = m.is_real();
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (real)
        row.push_back(m(r, c).real());
      else
        row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    data.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"complex", !real}, {"data", std::move(data)}};
}

HermitianMatrix hermitian_from_json(const json &doc) {
  const CMatrix m = matrix_from_json(doc);
  try {
    return HermitianMatrix(m, kMatrixFileHermitianTol);
  } catch (const Error &e) {
    fail(ErrorKind::Format, e.what());
  }
}

json family_json(const IndexFamily &f) {
  return json::array({f.label, f.residue, f.modulus});
}

IndexFamily family_from_json(const json &j) {
  if (!j.is_array() || j.size() != 3)
    fail(ErrorKind::Format, "index family must be [label, residue, modulus]");
  IndexFamily f;
  f.label = static_cast<int>(as_int(j[0], "label"));
  f.residue = as_int(j[1], "residue");
  f.modulus = as_int(j[2], "modulus");
  if (!f.valid())
    fail(ErrorKind::Format, "index family out of range");
  return f;
}

json rules_json(const RuleOperator &op) {
  json out = json::array();
  for (const BlockRule &r : op.rules())
    out.push_back(json{{"source", family_json(r.source)},
                       {"target", family_json(r.target)},
                       {"mat", r.mat.v}});
  return out;
}

RuleOperator rules_from_json(const json &j) {
  if (!j.is_array())
    fail(ErrorKind::Format, "rule list must be an array");
  std::vector<BlockRule> rules;
  rules.reserve(j.size());
  for (const json &r : j) {
    if (!r.is_object())
      fail(ErrorKind::Format, "rule must be an object");
    BlockRule rule;
    rule.source = family_from_json(field(r, "source"));
    rule.target = family_from_json(field(r, "target"));
    const json &mat = field(r, "mat");
    if (!mat.is_array() || mat.size() != 4)
      fail(ErrorKind::Format, "rule matrix must have four entries");
    for (int i = 0; i < 4; ++i)
      rule.mat.v[i] = as_double(mat[i], "rule matrix entry");
    rules.push_back(rule);
  }
  try {
    return RuleOperator(std::move(rules));
  } catch (const Error &e) {
    fail(ErrorKind::Format, e.what());
  }
}

} // namespace

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out)
    fail(ErrorKind::Io, "write to '" + path + "' failed");
}

HermitianMatrix parse_matrix(const std::string &text) {
  return hermitian_from_json(parse_json(text));
}

std::string matrix_to_json(const CMatrix &m) { return matrix_json(m).dump(); }

SpectralPresentation parse_spectral_input(const std::string &text,
                                          double cluster_tol) {
  const json doc = parse_json(text);
  const json *values = nullptr;
  if (doc.is_array())
    values = &doc;
  else if (doc.is_object() && doc.contains("spectrum"))
    values = &doc["spectrum"];
  if (values) {
    if (!values->is_array() || values->empty())
      fail(ErrorKind::Format, "spectrum must be a nonempty array of numbers");
    std::vector<double> v;
    for (const json &e : *values)
      v.push_back(as_double(e, "spectrum value"));
    try {
      return SpectralPresentation::from_values(std::move(v));
    } catch (const Error &e) {
      fail(ErrorKind::Format, e.what());
    }
  }
  return inflate(hermitian_from_json(doc), cluster_tol);
}

SpectralPresentation load_spectral_input(const std::string &path,
                                         double cluster_tol) {
  return parse_spectral_input(read_text_file(path), cluster_tol);
}

std::string decomposition_to_json(const Decomposition &d) {
  json pairs = json::array();
  for (const OperatorPair &pair : d.pairs)
    pairs.push_back(json{{"q", rules_json(pair.q)}, {"p", rules_json(pair.p)}});
  json doc{{"format", kFormatTag},
           {"version", kFormatVersion},
           {"n", d.n},
           {"m", d.m},
           {"a", d.a.to_double()},
           {"b", d.b.to_double()},
           {"a_exact", d.a.to_string()},
           {"b_exact", d.b.to_string()},
           {"eigenvalues", d.spectrum.eigenvalues},
           {"f_labels", d.plan.f_labels()},
           {"rotation", d.spectrum.rotation ? matrix_json(*d.spectrum.rotation)
                                            : json(nullptr)},
           {"column_labels", d.spectrum.column_labels},
           {"pairs", std::move(pairs)}};
  return doc.dump(1) + "\n";
}

namespace {

Decomposition decomposition_from_document(const json &doc) {
  if (!doc.is_object() || doc.value("format", std::string{}) != kFormatTag)
    fail(ErrorKind::Format, "not a decomposition file");
  if (as_int(field(doc, "version"), "version") != kFormatVersion)
    fail(ErrorKind::Format, "unsupported decomposition file version");

  Decomposition d;
  const std::int64_t n = as_int(field(doc, "n"), "n");
  if (n < 4 || n % 2 != 0 || n > 1'000'000)
    fail(ErrorKind::Format, "n must be an even integer >= 4");
  d.n = static_cast<int>(n);

  const json &eig = field(doc, "eigenvalues");
  if (!eig.is_array() || eig.empty())
    fail(ErrorKind::Format, "eigenvalues must be a nonempty array");
  for (const json &e : eig)
    d.spectrum.eigenvalues.push_back(as_double(e, "eigenvalue"));
  for (std::size_t k = 1; k < d.spectrum.eigenvalues.size(); ++k)
    if (!(d.spectrum.eigenvalues[k - 1] < d.spectrum.eigenvalues[k]))
      fail(ErrorKind::Format, "eigenvalues must be strictly increasing");

  const json &rot = field(doc, "rotation");
  if (!rot.is_null()) {
    d.spectrum.rotation = matrix_from_json(rot);
    const json &labels = field(doc, "column_labels");
    if (!labels.is_array() || labels.size() != d.spectrum.rotation->cols())
      fail(ErrorKind::Format, "column_labels must match the rotation size");
    for (const json &l : labels) {
      const std::int64_t k = as_int(l, "column label");
      if (k < 0 || static_cast<std::size_t>(k) >= d.spectrum.label_count())
        fail(ErrorKind::Format, "column label out of range");
      d.spectrum.column_labels.push_back(static_cast<int>(k));
    }
  }

  try {
    d.plan = plan_sectors(d.spectrum, d.n);
  } catch (const Error &e) {
    fail(ErrorKind::Format, e.what());
  }
  const CorridorConstants c = corridor_constants(d.n);
  d.m = c.m;
  d.a = c.a;
  d.b = c.b;
  if (as_int(field(doc, "m"), "m") != d.m)
    fail(ErrorKind::Format, "m does not equal n/2");
  if (Rational::parse(field(doc, "a_exact").get<std::string>()) != c.a ||
      Rational::parse(field(doc, "b_exact").get<std::string>()) != c.b)
    fail(ErrorKind::Format, "a, b do not match the constants for n");
  if (field(doc, "f_labels").get<std::vector<int>>() != d.plan.f_labels())
    fail(ErrorKind::Format, "f_labels disagree with the spectrum");

  const json &pairs = field(doc, "pairs");
  if (!pairs.is_array() || pairs.size() != static_cast<std::size_t>(d.n))
    fail(ErrorKind::Format, "pairs must hold n entries");
  for (const json &pair : pairs)
    d.pairs.push_back({rules_from_json(field(pair, "q")),
                       rules_from_json(field(pair, "p"))});
  return d;
}

} // namespace

Decomposition decomposition_from_json(const std::string &text) {
  const json doc = parse_json(text);
  try {
    return decomposition_from_document(doc);
  } catch (const json::exception &e) {
    fail(ErrorKind::Format, std::string("bad decomposition file: ") + e.what());
  }
}

void save_decomposition(const Decomposition &d, const std::string &path) {
  write_text_file(path, decomposition_to_json(d));
}

Decomposition load_decomposition(const std::string &path) {
  return decomposition_from_json(read_text_file(path));
}

} // namespace qpsum
