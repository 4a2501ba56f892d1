#include "qpsum/blockops.hpp"

#include "qpsum/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace qpsum {

SpectralPresentation SpectralPresentation::from_values(std::vector<double> values) {
  if (values.empty())
    fail(ErrorKind::Domain, "spectrum must not be empty");
  for (double v : values)
    if (!std::isfinite(v))
      fail(ErrorKind::Domain, "spectrum values must be finite");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  SpectralPresentation pres;
  pres.eigenvalues = std::move(values);
  return pres;
}

CMatrix SpectralPresentation::reconstruct() const {
  if (!rotation)
    fail(ErrorKind::Domain, "spectral presentation has no basis rotation");
  std::vector<double> diag;
  diag.reserve(column_labels.size());
  for (int label : column_labels)
    diag.push_back(lambda(label));
  return *rotation * CMatrix::diagonal(diag) * rotation->adjoint();
}

SpectralPresentation inflate(const HermitianMatrix &x0, double cluster_tol) {
  if (x0.dim() == 0)
    fail(ErrorKind::Domain, "cannot inflate an empty matrix");
  const EigenDecomposition eig = hermitian_eig(x0);
  double norm = 0.0;
  for (double v : eig.values)
    norm = std::max(norm, std::abs(v));
  const double gap = cluster_tol * norm;

  SpectralPresentation pres;
  pres.column_labels.resize(eig.values.size());
  std::size_t start = 0;
  while (start < eig.values.size()) {
    std::size_t end = start + 1;
    while (end < eig.values.size() &&
           eig.values[end] - eig.values[end - 1] <= gap)
      ++end;
    const double mean =
        std::accumulate(eig.values.begin() + start, eig.values.begin() + end,
                        0.0) /
        static_cast<double>(end - start);
    const int label = static_cast<int>(pres.eigenvalues.size());
    pres.eigenvalues.push_back(mean);
    for (std::size_t j = start; j < end; ++j)
      pres.column_labels[j] = label;
    start = end;
  }
  pres.rotation = eig.basis;
  return pres;
}

std::vector<IndexFamily> split_family(const IndexFamily &f, int parts) {
  if (parts < 1)
    fail(ErrorKind::Domain, "split_family needs at least one part");
  if (f.modulus > std::numeric_limits<std::int64_t>::max() / parts)
    fail(ErrorKind::Numeric, "family modulus overflow");
  std::vector<IndexFamily> out;
  out.reserve(parts);
  for (int j = 0; j < parts; ++j)
    out.push_back({f.label, f.residue + j * f.modulus, parts * f.modulus});
  return out;
}

namespace {

bool families_intersect(const IndexFamily &l, const IndexFamily &r) {
  if (l.label != r.label)
    return false;
  const std::int64_t g = std::gcd(l.modulus, r.modulus);
  return (l.residue - r.residue) % g == 0;
}

void require_disjoint(const std::vector<IndexFamily> &list, const char *what) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].valid())
      fail(ErrorKind::Domain, std::string("invalid index family among ") + what);
    for (std::size_t j = i + 1; j < list.size(); ++j)
      if (families_intersect(list[i], list[j]))
        fail(ErrorKind::Domain,
             std::string("overlapping index families among ") + what);
  }
}

} // namespace

std::vector<std::pair<IndexFamily, IndexFamily>>
match_families(const std::vector<IndexFamily> &sources,
               const std::vector<IndexFamily> &targets) {
  if (sources.empty() && targets.empty())
    return {};
  if (sources.empty() || targets.empty())
    fail(ErrorKind::Dimension,
         "cannot match an empty family list with a nonempty one");
  require_disjoint(sources, "sources");
  require_disjoint(targets, "targets");

  const int s_count = static_cast<int>(sources.size());
  const int t_count = static_cast<int>(targets.size());
  std::vector<std::vector<IndexFamily>> target_parts;
  target_parts.reserve(targets.size());
  for (const auto &t : targets)
    target_parts.push_back(split_family(t, s_count));

  std::vector<std::pair<IndexFamily, IndexFamily>> out;
  out.reserve(static_cast<std::size_t>(s_count) * t_count);
  for (int j = 0; j < s_count; ++j) {
    const auto source_parts = split_family(sources[j], t_count);
    for (int l = 0; l < t_count; ++l)
      out.emplace_back(source_parts[l], target_parts[l][j]);
  }
  return out;
}

std::size_t RuleOperator::KeyHash::operator()(const Key &k) const noexcept {
  std::size_t h = std::hash<int>{}(k.label);
  h = h * 1000003u ^ std::hash<std::int64_t>{}(k.modulus);
  h = h * 1000003u ^ std::hash<std::int64_t>{}(k.residue);
  return h;
}

RuleOperator::RuleOperator(std::vector<BlockRule> rules)
    : rules_(std::move(rules)) {
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const BlockRule &rule = rules_[r];
    if (!rule.source.valid() || !rule.target.valid())
      fail(ErrorKind::Malformed, "rule " + std::to_string(r) +
                                     " has an invalid index family");
    if (families_intersect(rule.source, rule.target))
      fail(ErrorKind::Malformed, "rule " + std::to_string(r) +
                                     " has overlapping source and target");
    int side = 0;
    for (const IndexFamily *f : {&rule.source, &rule.target}) {
      lookup_[Key{f->label, f->modulus, f->residue}].emplace_back(r, side++);
      auto &mods = moduli_[f->label];
      if (std::find(mods.begin(), mods.end(), f->modulus) == mods.end())
        mods.push_back(f->modulus);
    }
  }
}

std::vector<RuleSlot> RuleOperator::locate(Index u) const {
  std::vector<RuleSlot> slots;
  if (u.copy < 0)
    return slots;
  auto mods = moduli_.find(u.label);
  if (mods == moduli_.end())
    return slots;
  for (std::int64_t modulus : mods->second) {
    const std::int64_t residue = u.copy % modulus;
    auto hit = lookup_.find(Key{u.label, modulus, residue});
    if (hit == lookup_.end())
      continue;
    for (auto [rule, side] : hit->second)
      slots.push_back({rule, side, (u.copy - residue) / modulus});
  }
  return slots;
}

Index RuleOperator::partner(const RuleSlot &slot) const {
  const BlockRule &rule = rules_.at(slot.rule);
  return (slot.side == 0 ? rule.target : rule.source).element(slot.position);
}

std::vector<RuleOperator::Term> RuleOperator::row(Index u) const {
  const auto slots = locate(u);
  if (slots.empty())
    return {};
  if (slots.size() > 1)
    fail(ErrorKind::Malformed,
         "index (" + std::to_string(u.label) + ", " + std::to_string(u.copy) +
             ") is covered by " + std::to_string(slots.size()) +
             " rule positions");
  const RuleSlot &slot = slots.front();
  const Mat2 &m = rules_[slot.rule].mat;
  return {{u, m(slot.side, slot.side)},
          {partner(slot), m(slot.side, 1 - slot.side)}};
}

double RuleOperator::entry(Index u, Index v) const {
  for (const Term &term : row(u))
    if (term.column == v)
      return term.value;
  return 0.0;
}

std::vector<RuleOperator::Term> product_row(const RuleOperator &left,
                                            const RuleOperator &right,
                                            Index u) {
  std::vector<RuleOperator::Term> out;
  for (const auto &lt : left.row(u)) {
    if (lt.value == 0.0)
      continue;
    for (const auto &rt : right.row(lt.column)) {
      auto it = std::find_if(out.begin(), out.end(), [&](const auto &t) {
        return t.column == rt.column;
      });
      if (it == out.end())
        out.push_back({rt.column, lt.value * rt.value});
      else
        it->value += lt.value * rt.value;
    }
  }
  return out;
}

std::vector<Index> window_indices(std::size_t labels, std::int64_t copies) {
  std::vector<Index> out;
  out.reserve(labels * static_cast<std::size_t>(std::max<std::int64_t>(copies, 0)));
  for (std::int64_t t = 0; t < copies; ++t)
    for (std::size_t k = 0; k < labels; ++k)
      out.push_back({static_cast<int>(k), t});
  return out;
}

CMatrix window_matrix(const RuleOperator &op, const SpectralPresentation &pres,
                      std::int64_t copies) {
  if (copies < 1)
    fail(ErrorKind::Domain, "window needs at least one copy");
  const std::size_t labels = pres.label_count();
  const auto basis = window_indices(labels, copies);
  CMatrix out(basis.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (const auto &term : op.row(basis[r])) {
      const Index v = term.column;
      if (v.copy >= copies || v.label < 0 ||
          static_cast<std::size_t>(v.label) >= labels)
        continue;
      out(r, static_cast<std::size_t>(v.copy) * labels + v.label) = term.value;
    }
  }
  return out;
}

} // namespace qpsum
