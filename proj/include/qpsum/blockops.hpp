#ifndef QPSUM_BLOCKOPS_HPP
#define QPSUM_BLOCKOPS_HPP

// Finitely described operators on the countable basis {(k, t) : t >= 0},
// where k labels a distinct eigenvalue of x and t counts copies of it. The
// operator represented by a spectrum is x (x) 1: every eigenvalue has
// countably infinite multiplicity.

#include "qpsum/linalg.hpp"
#include "qpsum/matfactory.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qpsum {

struct Index {
  int label = 0;
  std::int64_t copy = 0;

  friend bool operator==(const Index &, const Index &) = default;
  friend auto operator<=>(const Index &, const Index &) = default;
};

struct SpectralPresentation {
  std::vector<double> eigenvalues;  // strictly increasing; label = position

  /// Present when built from a matrix: column j of `rotation` is an
  /// eigenvector for label `column_labels[j]`.
  std::optional<CMatrix> rotation;
  std::vector<int> column_labels;

  std::size_t label_count() const noexcept { return eigenvalues.size(); }
  double lambda(int label) const { return eigenvalues.at(label); }
  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }

  /// Sorts, merges exact duplicates, rejects empty or non-finite input.
  static SpectralPresentation from_values(std::vector<double> values);

  /// Reconstructs sum_j lambda(column_labels[j]) v_j v_j* from the rotation.
  CMatrix reconstruct() const;
};

/// Eigendecomposes x0 and merges eigenvalues within cluster_tol * ||x0||
/// into one label (value = cluster mean).
SpectralPresentation inflate(const HermitianMatrix &x0,
                             double cluster_tol = 1e-10);

/// The copies {(label, residue + s * modulus) : s >= 0}.
struct IndexFamily {
  int label = 0;
  std::int64_t residue = 0;
  std::int64_t modulus = 1;

  Index element(std::int64_t s) const { return {label, residue + s * modulus}; }
  bool contains(Index u) const noexcept {
    return u.label == label && u.copy >= 0 && u.copy % modulus == residue;
  }
  /// Enumeration counter of u, which must be contained.
  std::int64_t position(Index u) const noexcept {
    return (u.copy - residue) / modulus;
  }
  bool valid() const noexcept {
    return modulus > 0 && residue >= 0 && residue < modulus && label >= 0;
  }

  friend bool operator==(const IndexFamily &, const IndexFamily &) = default;
  friend auto operator<=>(const IndexFamily &, const IndexFamily &) = default;
};

/// Partition of f into `parts` sub-progressions (label, residue + j M,
/// parts M), j = 0 .. parts-1.
std::vector<IndexFamily> split_family(const IndexFamily &f, int parts);

/// Bijection between the unions of two disjoint family lists: each source is
/// split into |targets| parts, each target into |sources| parts, and the
/// l-th part of source j is paired with the j-th part of target l. Within a
/// pair the s-th elements correspond. Exactly one empty side raises
/// ErrorKind::Dimension.
std::vector<std::pair<IndexFamily, IndexFamily>>
match_families(const std::vector<IndexFamily> &sources,
               const std::vector<IndexFamily> &targets);

/// Places `mat` on span{source(s), target(s)}, in that basis order, for
/// every s >= 0.
struct BlockRule {
  IndexFamily source;
  IndexFamily target;
  Mat2 mat;
};

struct RuleSlot {
  std::size_t rule = 0;
  int side = 0;  // 0 = source, 1 = target
  std::int64_t position = 0;
};

/// Sum of block rules. Indices not covered by any rule are in the kernel.
/// Immutable once built; lookups are safe from several threads.
class RuleOperator {
public:
  RuleOperator() = default;
  explicit RuleOperator(std::vector<BlockRule> rules);

  const std::vector<BlockRule> &rules() const noexcept { return rules_; }
  bool empty() const noexcept { return rules_.empty(); }

  /// All rule positions covering u (a well-formed operator has at most one).
  std::vector<RuleSlot> locate(Index u) const;

  /// Matrix element <u, op v>. Raises ErrorKind::Malformed if u is covered
  /// twice.
  double entry(Index u, Index v) const;

  struct Term {
    Index column;
    double value;
  };
  /// Nonzero-candidate entries of row u: at most u itself and its partner.
  std::vector<Term> row(Index u) const;

  Index partner(const RuleSlot &slot) const;

private:
  struct Key {
    int label;
    std::int64_t modulus;
    std::int64_t residue;
    friend bool operator==(const Key &, const Key &) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key &k) const noexcept;
  };

  std::vector<BlockRule> rules_;
  std::unordered_map<Key, std::vector<std::pair<std::size_t, int>>, KeyHash>
      lookup_;
  std::unordered_map<int, std::vector<std::int64_t>> moduli_;
};

/// Sparse row of the product `left * right`.
std::vector<RuleOperator::Term> product_row(const RuleOperator &left,
                                            const RuleOperator &right,
                                            Index u);

/// Window basis {(k, t) : t < copies}, ordered by (t, k).
std::vector<Index> window_indices(std::size_t labels, std::int64_t copies);

/// Dense compression of op to the window basis. Entries are exact; the
/// compression of a projection is not a projection when blocks straddle
/// the window edge.
CMatrix window_matrix(const RuleOperator &op, const SpectralPresentation &pres,
                      std::int64_t copies);

} // namespace qpsum

#endif
