#include "qpsum/decomposer.hpp"

#include "qpsum/error.hpp"
#include "qpsum/matfactory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace qpsum {

namespace {

constexpr double kCorridorSlack = 1e-12;
constexpr std::size_t kNoRule = std::numeric_limits<std::size_t>::max();

std::string index_text(Index u) {
  return "(" + std::to_string(u.label) + ", " + std::to_string(u.copy) + ")";
}

std::string family_text(const IndexFamily &f) {
  return "[" + std::to_string(f.label) + ", " + std::to_string(f.residue) +
         ", " + std::to_string(f.modulus) + "]";
}

using FamilyKey = std::pair<IndexFamily, IndexFamily>;

std::map<FamilyKey, std::size_t> rules_by_families(const RuleOperator &op) {
  std::map<FamilyKey, std::size_t> out;
  for (std::size_t r = 0; r < op.rules().size(); ++r)
    out.emplace(FamilyKey{op.rules()[r].source, op.rules()[r].target}, r);
  return out;
}

} // namespace

const char *to_string(Sector s) noexcept {
  switch (s) {
  case Sector::HatPool:
    return "hat pool";
  case Sector::TildePool:
    return "tilde pool";
  case Sector::HatCell:
    return "hat cell";
  case Sector::TildeCell:
    return "tilde cell";
  }
  return "?";
}

SectorPlan::SectorPlan(int m, std::vector<bool> in_f)
    : m_(m), in_f_(std::move(in_f)) {
  if (m_ < 2)
    fail(ErrorKind::Domain, "sector plan needs m >= 2");
  if (in_f_.empty())
    fail(ErrorKind::Domain, "sector plan needs at least one label");
}

std::vector<int> SectorPlan::f_labels() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < in_f_.size(); ++k)
    if (in_f_[k])
      out.push_back(static_cast<int>(k));
  return out;
}

bool SectorPlan::f_empty() const noexcept {
  return std::none_of(in_f_.begin(), in_f_.end(), [](bool b) { return b; });
}

bool SectorPlan::f_full() const noexcept {
  return std::all_of(in_f_.begin(), in_f_.end(), [](bool b) { return b; });
}

// With both sectors present, the group's copies split as t = i (hat) and
// t = i + m (tilde) mod 2m. When one sector is empty the other takes both.
std::vector<std::int64_t> SectorPlan::hat_pool_residues(int group) const {
  if (f_empty())
    return {};
  if (f_full())
    return {group, group + m_};
  return {group};
}

std::vector<std::int64_t> SectorPlan::tilde_pool_residues(int group) const {
  if (f_full())
    return {};
  if (f_empty())
    return {group, group + m_};
  return {group + m_};
}

Sector SectorPlan::sector(int group, int label, std::int64_t residue) const {
  if (residue % m_ == group) {
    const auto hat = hat_pool_residues(group);
    return std::find(hat.begin(), hat.end(), residue) != hat.end()
               ? Sector::HatPool
               : Sector::TildePool;
  }
  return in_f(label) ? Sector::HatCell : Sector::TildeCell;
}

bool SectorPlan::in_other_tilde_pool(int group, std::int64_t residue) const {
  const int owner = static_cast<int>(residue % m_);
  if (owner == group)
    return false;
  const auto tilde = tilde_pool_residues(owner);
  return std::find(tilde.begin(), tilde.end(), residue) != tilde.end();
}

std::vector<IndexFamily> SectorPlan::families(int group, Sector which) const {
  std::vector<IndexFamily> out;
  for (std::size_t k = 0; k < in_f_.size(); ++k)
    for (std::int64_t r = 0; r < period(); ++r)
      if (sector(group, static_cast<int>(k), r) == which)
        out.push_back({static_cast<int>(k), r, period()});
  return out;
}

std::vector<IndexFamily> SectorPlan::hat_cells(int group) const {
  return families(group, Sector::HatCell);
}
std::vector<IndexFamily> SectorPlan::tilde_cells(int group) const {
  return families(group, Sector::TildeCell);
}
std::vector<IndexFamily> SectorPlan::hat_pool(int group) const {
  return families(group, Sector::HatPool);
}
std::vector<IndexFamily> SectorPlan::tilde_pool(int group) const {
  return families(group, Sector::TildePool);
}

SectorPlan plan_sectors(const SpectralPresentation &pres, int n) {
  if (n < 4 || n % 2 != 0)
    fail(ErrorKind::Domain,
         "decomposition needs an even n >= 4, got " + std::to_string(n));
  if (pres.label_count() == 0)
    fail(ErrorKind::Domain, "empty spectrum");
  const CorridorConstants c = corridor_constants(n);
  if (pres.min() < c.low.to_double() - kCorridorSlack ||
      pres.max() > c.high.to_double() + kCorridorSlack) {
    const FeasibilityVerdict v = check_feasibility(pres.min(), pres.max(), n);
    std::string what = "spectrum outside the constructive corridor for n = " +
                       std::to_string(n);
    for (const auto &msg : v.messages)
      what += "; " + msg;
    fail(ErrorKind::Infeasible, what);
  }
  const double two_b = (Rational(2) * c.b).to_double();
  std::vector<bool> in_f(pres.label_count());
  for (std::size_t k = 0; k < in_f.size(); ++k)
    in_f[k] = pres.eigenvalues[k] > two_b;
  return SectorPlan(c.m, std::move(in_f));
}

std::map<std::pair<int, std::int64_t>, double>
build_yi_values(const SectorPlan &plan, const SpectralPresentation &pres,
                int group) {
  if (group < 0 || group >= plan.m())
    fail(ErrorKind::Domain, "group index out of range");
  const double two_b =
      (Rational(2) * corridor_constants(2 * plan.m()).b).to_double();
  std::map<std::pair<int, std::int64_t>, double> out;
  for (std::size_t k = 0; k < plan.label_count(); ++k)
    for (std::int64_t r = 0; r < plan.period(); ++r)
      out[{static_cast<int>(k), r}] = yi_cell_value<double>(
          plan, group, static_cast<int>(k), r, pres.eigenvalues[k], two_b);
  return out;
}

Decomposition decompose(const SpectralPresentation &pres, int n) {
  Decomposition d;
  d.plan = plan_sectors(pres, n);
  const CorridorConstants c = corridor_constants(n);
  d.n = n;
  d.m = c.m;
  d.a = c.a;
  d.b = c.b;
  d.spectrum = pres;

  const double b = c.b.to_double();
  const double two_b = (Rational(2) * c.b).to_double();
  const std::int64_t period = d.plan.period();

  std::vector<std::vector<BlockRule>> q_rules(n), p_rules(n);
  for (int g = 0; g < d.m; ++g) {
    for (bool hat : {true, false}) {
      const auto cells = hat ? d.plan.hat_cells(g) : d.plan.tilde_cells(g);
      const auto pool = hat ? d.plan.hat_pool(g) : d.plan.tilde_pool(g);
      const double x = hat ? 0.0 : b;
      for (const auto &[cell, pool_part] : match_families(cells, pool)) {
        const std::int64_t r = cell.residue % period;
        const double y =
            yi_cell_value<double>(d.plan, g, cell.label, r,
                                  pres.eigenvalues[cell.label], two_b) /
            2.0;
        const RegionPoint point{x, y};
        if (!in_region_a(point, kRegionTolerance)) {
          std::ostringstream os;
          os.precision(17);
          os << "constructed point (" << x << ", " << y << ") outside A for "
             << "group " << g + 1 << ", label " << cell.label << ", residue "
             << r;
          fail(ErrorKind::Region, os.str());
        }
        const ProjectionPair2x2 pq = make_pq(point);
        q_rules[2 * g].push_back({pool_part, cell, pq.q});
        p_rules[2 * g].push_back({pool_part, cell, pq.p});
        q_rules[2 * g + 1].push_back({pool_part, cell, conjugate_by_sign(pq.q)});
        p_rules[2 * g + 1].push_back({pool_part, cell, conjugate_by_sign(pq.p)});
      }
    }
  }
  d.pairs.reserve(n);
  for (int i = 0; i < n; ++i)
    d.pairs.push_back(
        {RuleOperator(std::move(q_rules[i])), RuleOperator(std::move(p_rules[i]))});
  return d;
}

std::string Finding::describe() const {
  std::string out = "pair " + std::to_string(pair + 1) + " " + op;
  if (rule != kNoRule)
    out += " rule " + std::to_string(rule);
  return out + ": " + what;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  os << "window: " << window << " copies per label\n";
  os << "entry defect: " << max_entry_defect << " (tolerance " << tol << ")";
  if (max_entry_defect > 0.0)
    os << " at row " << index_text(worst_row) << ", column "
       << index_text(worst_col);
  os << "\n";
  auto section = [&os](const char *name, const std::vector<Finding> &list) {
    os << name << ": ";
    if (list.empty()) {
      os << "ok\n";
      return;
    }
    os << list.size() << " failure(s)\n";
    for (const auto &f : list)
      os << "  " << f.describe() << "\n";
  };
  section("projection audit", projection_failures);
  section("coverage audit", coverage_failures);
  section("sector audit", sector_failures);
  os << "result: " << (passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

struct EntryScan {
  double max_defect = 0.0;
  Index row;
  Index col;
};

EntryScan scan_rows(const Decomposition &d, const std::vector<Index> &basis,
                    std::size_t begin, std::size_t end, std::int64_t copies) {
  EntryScan scan;
  const std::size_t labels = d.spectrum.label_count();
  auto consider = [&scan](double defect, Index u, Index v) {
    if (defect > scan.max_defect || std::isnan(defect)) {
      scan.max_defect = std::isnan(defect)
                            ? std::numeric_limits<double>::infinity()
                            : defect;
      scan.row = u;
      scan.col = v;
    }
  };
  for (std::size_t i = begin; i < end; ++i) {
    const Index u = basis[i];
    std::vector<RuleOperator::Term> sum;
    try {
      for (const auto &pair : d.pairs)
        for (const auto &term : product_row(pair.q, pair.p, u)) {
          auto it = std::find_if(sum.begin(), sum.end(), [&](const auto &t) {
            return t.column == term.column;
          });
          if (it == sum.end())
            sum.push_back(term);
          else
            it->value += term.value;
        }
    } catch (const Error &) {
      consider(std::numeric_limits<double>::infinity(), u, u);
      continue;
    }
    bool diagonal_seen = false;
    for (const auto &term : sum) {
      const Index v = term.column;
      if (v.copy >= copies || v.label < 0 ||
          static_cast<std::size_t>(v.label) >= labels)
        continue;
      const double target = v == u ? d.spectrum.lambda(u.label) : 0.0;
      diagonal_seen = diagonal_seen || v == u;
      consider(std::abs(term.value - target), u, v);
    }
    if (!diagonal_seen)
      consider(std::abs(d.spectrum.lambda(u.label)), u, u);
  }
  return scan;
}

void audit_projections(const Decomposition &d, double tol,
                       std::vector<Finding> &out) {
  for (std::size_t j = 0; j < d.pairs.size(); ++j)
    for (char op : {'Q', 'P'}) {
      const RuleOperator &o = op == 'Q' ? d.pairs[j].q : d.pairs[j].p;
      for (std::size_t r = 0; r < o.rules().size(); ++r)
        if (!is_block_projection(o.rules()[r].mat, tol))
          out.push_back({j, op, r, "block is not a projection"});
    }
}

void audit_coverage(const Decomposition &d, const std::vector<Index> &basis,
                    std::vector<Finding> &out) {
  for (std::size_t j = 0; j < d.pairs.size(); ++j)
    for (char op : {'Q', 'P'}) {
      const RuleOperator &o = op == 'Q' ? d.pairs[j].q : d.pairs[j].p;
      for (const Index &u : basis) {
        const auto slots = o.locate(u);
        if (slots.size() != 1)
          out.push_back({j, op, slots.empty() ? kNoRule : slots.front().rule,
                         "index " + index_text(u) + " covered " +
                             std::to_string(slots.size()) + " times"});
      }
    }
}

void audit_sectors(const Decomposition &d, std::vector<Finding> &out) {
  const double tau = kRegionTolerance;
  const double a = d.a.to_double();
  const double b = d.b.to_double();
  const std::int64_t period = d.plan.period();
  for (std::size_t j = 0; j < d.pairs.size(); ++j) {
    const int group = static_cast<int>(j / 2);
    const RuleOperator &q = d.pairs[j].q;
    const RuleOperator &p = d.pairs[j].p;
    auto q_index = rules_by_families(q);
    auto p_index = rules_by_families(p);
    for (const auto &[key, qr] : q_index)
      if (!p_index.count(key))
        out.push_back({j, 'Q', qr, "no P rule on the same block"});
    for (std::size_t r = 0; r < p.rules().size(); ++r) {
      const BlockRule &rule = p.rules()[r];
      auto hit = q_index.find({rule.source, rule.target});
      if (hit == q_index.end()) {
        out.push_back({j, 'P', r, "no Q rule on the same block"});
        continue;
      }
      if (rule.source.modulus % period != 0 || rule.target.modulus % period != 0) {
        out.push_back({j, 'P', r, "families do not refine the period 2m"});
        continue;
      }
      if (static_cast<std::size_t>(rule.target.label) >= d.plan.label_count() ||
          static_cast<std::size_t>(rule.source.label) >= d.plan.label_count()) {
        out.push_back({j, 'P', r, "label out of range"});
        continue;
      }
      const Sector cell = d.plan.sector(group, rule.target.label,
                                        rule.target.residue % period);
      const Sector pool = d.plan.sector(group, rule.source.label,
                                        rule.source.residue % period);
      const bool hat = cell == Sector::HatCell && pool == Sector::HatPool;
      const bool tilde = cell == Sector::TildeCell && pool == Sector::TildePool;
      if (!hat && !tilde) {
        out.push_back({j, 'P', r,
                       std::string("block couples ") + to_string(pool) +
                           " " + family_text(rule.source) + " with " +
                           to_string(cell) + " " + family_text(rule.target)});
        continue;
      }
      const Mat2 qp = q.rules()[hit->second].mat * rule.mat;
      const double x = qp(0, 0);
      const double y = qp(1, 1);
      std::ostringstream os;
      os.precision(17);
      if (hat && !(std::abs(x) <= tau && y >= -tau && y <= 1.0 + tau))
        os << "hat point (" << x << ", " << y << ") not in {0} x [0, 1]";
      else if (tilde &&
               !(std::abs(x - b) <= tau && y >= a - tau && y <= 1.0 - b + tau))
        os << "tilde point (" << x << ", " << y << ") not in {b} x [a, 1-b]";
      else if (!in_region_a({x, y}, tau))
        os << "point (" << x << ", " << y << ") not in A";
      if (!os.str().empty())
        out.push_back({j, 'P', r, os.str()});
    }
  }
}

} // namespace

VerificationReport verify_decomposition(const Decomposition &d,
                                        std::int64_t copies, double tol,
                                        unsigned threads) {
  if (copies < 2 * static_cast<std::int64_t>(d.m))
    fail(ErrorKind::Domain, "window of " + std::to_string(copies) +
                                " copies is smaller than 2m = " +
                                std::to_string(2 * d.m));
  if (d.pairs.size() != static_cast<std::size_t>(d.n))
    fail(ErrorKind::Malformed, "decomposition holds " +
                                   std::to_string(d.pairs.size()) +
                                   " pairs, expected " + std::to_string(d.n));
  VerificationReport report;
  report.window = copies;
  report.tol = tol;
  const auto basis = window_indices(d.spectrum.label_count(), copies);

  threads = std::max(1u, std::min<unsigned>(threads, basis.size()));
  std::vector<EntryScan> scans(threads);
  if (threads == 1) {
    scans[0] = scan_rows(d, basis, 0, basis.size(), copies);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (basis.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(basis.size(), t * chunk);
      const std::size_t end = std::min(basis.size(), begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        scans[t] = scan_rows(d, basis, begin, end, copies);
      });
    }
    for (auto &w : workers)
      w.join();
  }
  // Chunks are in row order; keeping the first strict maximum matches the
  // serial scan.
  for (const auto &s : scans)
    if (s.max_defect > report.max_entry_defect) {
      report.max_entry_defect = s.max_defect;
      report.worst_row = s.row;
      report.worst_col = s.col;
    }

  audit_projections(d, tol, report.projection_failures);
  audit_coverage(d, basis, report.coverage_failures);
  audit_sectors(d, report.sector_failures);
  report.passed = report.max_entry_defect <= tol &&
                  report.projection_failures.empty() &&
                  report.coverage_failures.empty() &&
                  report.sector_failures.empty();
  return report;
}

double group_offdiag_defect(const Decomposition &d) {
  double worst = 0.0;
  for (std::size_t g = 0; 2 * g + 1 < d.pairs.size(); ++g) {
    const OperatorPair &first = d.pairs[2 * g];
    const OperatorPair &second = d.pairs[2 * g + 1];
    auto q1 = rules_by_families(first.q);
    auto q2 = rules_by_families(second.q);
    auto p2 = rules_by_families(second.p);
    for (const BlockRule &rule : first.p.rules()) {
      const FamilyKey key{rule.source, rule.target};
      if (!q1.count(key) || !q2.count(key) || !p2.count(key))
        return std::numeric_limits<double>::infinity();
      const Mat2 sum = first.q.rules()[q1[key]].mat * rule.mat +
                       second.q.rules()[q2[key]].mat *
                           second.p.rules()[p2[key]].mat;
      worst = std::max({worst, std::abs(sum(0, 1)), std::abs(sum(1, 0))});
    }
  }
  return worst;
}

std::vector<SparseEntry> window_product(const OperatorPair &pair,
                                        std::size_t labels,
                                        std::int64_t copies) {
  const auto basis = window_indices(labels, copies);
  std::vector<SparseEntry> out;
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (const auto &term : product_row(pair.q, pair.p, basis[r])) {
      const Index v = term.column;
      if (v.copy >= copies || v.label < 0 ||
          static_cast<std::size_t>(v.label) >= labels)
        continue;
      out.push_back({r, static_cast<std::size_t>(v.copy) * labels + v.label,
                     term.value});
    }
  return out;
}

} // namespace qpsum
