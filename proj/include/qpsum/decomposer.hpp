#ifndef QPSUM_DECOMPOSER_HPP
#define QPSUM_DECOMPOSER_HPP

// Constructive decomposition x (x) 1 = sum_{i=1}^{n} Q_i P_i for even
// n = 2m >= 4 and spectrum inside [-(n-4)^2/(8n), n-2].
//
// The copy index t is read modulo 2m. Group i (0-based here) owns the copies
// t = i, i + m (mod 2m); everything else is split between a "hat" sector
// (labels with lambda > 2b) and a "tilde" sector (lambda <= 2b). Within each
// group the copies owned by the group are pools that get matched one-to-one
// with the cells of the other copies, and each matched pair carries one 2x2
// block from the projection factory. Summing the two operator pairs of a
// group gives the diagonal operator y_i, and the y_i add up to x.

#include "qpsum/blockops.hpp"
#include "qpsum/rational.hpp"
#include "qpsum/region.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qpsum {

enum class Sector { HatPool, TildePool, HatCell, TildeCell };

const char *to_string(Sector s) noexcept;

class SectorPlan {
public:
  SectorPlan() = default;
  SectorPlan(int m, std::vector<bool> in_f);

  int m() const noexcept { return m_; }
  std::int64_t period() const noexcept { return 2 * static_cast<std::int64_t>(m_); }
  std::size_t label_count() const noexcept { return in_f_.size(); }
  bool in_f(int label) const { return in_f_.at(label); }
  std::vector<int> f_labels() const;
  bool f_empty() const noexcept;
  bool f_full() const noexcept;

  /// Residues mod 2m of the group's pools.
  std::vector<std::int64_t> hat_pool_residues(int group) const;
  std::vector<std::int64_t> tilde_pool_residues(int group) const;

  /// Sector of the cell (label, residue mod 2m) with respect to `group`.
  Sector sector(int group, int label, std::int64_t residue) const;

  /// Whether residue r lies in the tilde pool of some other group.
  bool in_other_tilde_pool(int group, std::int64_t residue) const;

  /// Families of period 2m, ordered by (label, residue).
  std::vector<IndexFamily> hat_cells(int group) const;
  std::vector<IndexFamily> tilde_cells(int group) const;
  std::vector<IndexFamily> hat_pool(int group) const;
  std::vector<IndexFamily> tilde_pool(int group) const;

private:
  std::vector<IndexFamily> families(int group, Sector which) const;

  int m_ = 0;
  std::vector<bool> in_f_;
};

/// Value of y_group on the cell (label, residue mod 2m) with eigenvalue
/// `lambda`: 0 on the hat pool, 2b on the tilde pool, and
/// (lambda - 2b [cell in another group's tilde pool]) / (m - 1) elsewhere.
/// Templated so the telescoping identity can be checked in exact arithmetic.
template <class T>
T yi_cell_value(const SectorPlan &plan, int group, int label,
                std::int64_t residue, const T &lambda, const T &two_b) {
  switch (plan.sector(group, label, residue)) {
  case Sector::HatPool:
    return T(0);
  case Sector::TildePool:
    return two_b;
  case Sector::HatCell:
  case Sector::TildeCell:
    break;
  }
  T numerator = lambda;
  if (plan.in_other_tilde_pool(group, residue))
    numerator -= two_b;
  return numerator / T(plan.m() - 1);
}

/// Rejects spectra outside the corridor (ErrorKind::Infeasible) and odd or
/// too small n (ErrorKind::Domain). Spectrum values within 1e-12 outside the
/// corridor are accepted.
SectorPlan plan_sectors(const SpectralPresentation &pres, int n);

/// y_group on every (label, residue mod 2m) cell.
std::map<std::pair<int, std::int64_t>, double>
build_yi_values(const SectorPlan &plan, const SpectralPresentation &pres,
                int group);

struct OperatorPair {
  RuleOperator q;
  RuleOperator p;
};

struct Decomposition {
  int n = 0;
  int m = 0;
  SpectralPresentation spectrum;
  Rational a;
  Rational b;
  SectorPlan plan;
  std::vector<OperatorPair> pairs;  // pairs[2g], pairs[2g+1] belong to group g
};

Decomposition decompose(const SpectralPresentation &pres, int n);

struct Finding {
  std::size_t pair = 0;  // 0-based
  char op = 'P';         // 'P' or 'Q'
  std::size_t rule = 0;
  std::string what;

  std::string describe() const;
};

struct VerificationReport {
  std::int64_t window = 0;
  double tol = 0.0;
  double max_entry_defect = 0.0;
  Index worst_row;
  Index worst_col;
  std::vector<Finding> projection_failures;
  std::vector<Finding> coverage_failures;
  std::vector<Finding> sector_failures;
  bool passed = false;

  std::string to_text() const;
};

/// Entrywise check of sum_i Q_i P_i = x (x) 1 on the window of `copies`
/// copies of every label, plus per-rule projection, coverage and sector
/// audits. copies must be at least 2m (ErrorKind::Domain otherwise). With
/// threads > 1 the entry check is split across threads; the report is the
/// same as the serial one.
VerificationReport verify_decomposition(const Decomposition &d,
                                        std::int64_t copies, double tol,
                                        unsigned threads = 1);

/// Largest off-diagonal block entry of Q_{2g}P_{2g} + Q_{2g+1}P_{2g+1},
/// over all groups and blocks.
double group_offdiag_defect(const Decomposition &d);

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Entries of Q P compressed to the window (window_indices order).
std::vector<SparseEntry> window_product(const OperatorPair &pair,
                                        std::size_t labels,
                                        std::int64_t copies);

} // namespace qpsum

#endif
