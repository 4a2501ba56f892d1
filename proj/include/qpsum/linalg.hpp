#ifndef QPSUM_LINALG_HPP
#define QPSUM_LINALG_HPP

// Small dense complex linear algebra: enough to diagonalize Hermitian
// matrices and commuting Hermitian pairs at desk scale (dim <= 64).

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qpsum {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix from_real(std::size_t rows, std::size_t cols,
                           std::span<const double> values);
  static CMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const cplx &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  CMatrix adjoint() const;
  CMatrix columns(std::span<const std::size_t> which) const;
  double max_abs() const noexcept;
  double frobenius() const noexcept;
  bool is_real(double tol = 0.0) const noexcept;

  friend CMatrix operator*(const CMatrix &l, const CMatrix &r);
  friend CMatrix operator+(const CMatrix &l, const CMatrix &r);
  friend CMatrix operator-(const CMatrix &l, const CMatrix &r);
  friend CMatrix operator*(double s, const CMatrix &m);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Max-entry distance from Hermitian, ||m - m*||_max.
double hermiticity_defect(const CMatrix &m);

/// Square matrix validated to be Hermitian; stored symmetrized.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  /// Accepts m when ||m - m*||_max <= tol * max(1, ||m||_max); raises
  /// ErrorKind::Domain otherwise.
  explicit HermitianMatrix(const CMatrix &m, double tol = 1e-12);

  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix zero(std::size_t n);

  std::size_t dim() const noexcept { return m_.rows(); }
  const CMatrix &matrix() const noexcept { return m_; }
  cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
  CMatrix m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix basis;               // columns are eigenvectors
};

inline constexpr std::size_t kMaxEigenDim = 64;
inline constexpr int kMaxJacobiSweeps = 30;

/// Cyclic complex Jacobi. Stops when the off-diagonal Frobenius mass drops
/// to 1e-13 ||a||_F; raises ErrorKind::Numeric after kMaxJacobiSweeps
/// sweeps without getting there.
EigenDecomposition hermitian_eig(const HermitianMatrix &a);

struct JointSpectrum {
  CMatrix basis;
  std::vector<std::pair<double, double>> values;  // (z1 value, z2 value)
};

inline constexpr double kDefaultClusterTolerance = 1e-8;

/// Common eigenbasis of two commuting Hermitian matrices. Eigenvalues of z1
/// closer than cluster_tol * ||z1|| are treated as one cluster, inside of
/// which z2 is diagonalized. Pairs come out in ascending lexicographic order.
JointSpectrum joint_diag(const HermitianMatrix &z1, const HermitianMatrix &z2,
                         double cluster_tol = kDefaultClusterTolerance);

struct ProjectionDefects {
  double idempotency = 0.0;  // ||p^2 - p||_max
  double hermiticity = 0.0;  // ||p - p*||_max
};

ProjectionDefects defect_norms(const CMatrix &p);

/// Block diagonal direct sum a (+) b.
CMatrix direct_sum(const CMatrix &a, const CMatrix &b);

} // namespace qpsum

#endif
