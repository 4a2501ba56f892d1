#include "qpsum/linalg.hpp"

#include "qpsum/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qpsum {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_real(std::size_t rows, std::size_t cols,
                           std::span<const double> values) {
  if (values.size() != rows * cols)
    fail(ErrorKind::Dimension, "value count does not match matrix shape");
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < values.size(); ++i)
    m.data_[i] = values[i];
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix CMatrix::columns(std::span<const std::size_t> which) const {
  CMatrix out(rows_, which.size());
  for (std::size_t j = 0; j < which.size(); ++j)
    for (std::size_t r = 0; r < rows_; ++r)
      out(r, j) = (*this)(r, which[j]);
  return out;
}

double CMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto &v : data_)
    m = std::max(m, std::abs(v));
  return m;
}

double CMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (const auto &v : data_)
    s += std::norm(v);
  return std::sqrt(s);
}

bool CMatrix::is_real(double tol) const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [tol](const cplx &v) { return std::abs(v.imag()) <= tol; });
}

CMatrix operator*(const CMatrix &l, const CMatrix &r) {
  if (l.cols_ != r.rows_)
    fail(ErrorKind::Dimension, "matrix product shape mismatch");
  CMatrix out(l.rows_, r.cols_);
  for (std::size_t i = 0; i < l.rows_; ++i)
    for (std::size_t k = 0; k < l.cols_; ++k) {
      const cplx a = l(i, k);
      if (a == cplx{})
        continue;
      for (std::size_t j = 0; j < r.cols_; ++j)
        out(i, j) += a * r(k, j);
    }
  return out;
}

CMatrix operator+(const CMatrix &l, const CMatrix &r) {
  if (l.rows_ != r.rows_ || l.cols_ != r.cols_)
    fail(ErrorKind::Dimension, "matrix sum shape mismatch");
  CMatrix out = l;
  for (std::size_t i = 0; i < out.data_.size(); ++i)
    out.data_[i] += r.data_[i];
  return out;
}

CMatrix operator-(const CMatrix &l, const CMatrix &r) {
  if (l.rows_ != r.rows_ || l.cols_ != r.cols_)
    fail(ErrorKind::Dimension, "matrix difference shape mismatch");
  CMatrix out = l;
  for (std::size_t i = 0; i < out.data_.size(); ++i)
    out.data_[i] -= r.data_[i];
  return out;
}

CMatrix operator*(double s, const CMatrix &m) {
  CMatrix out = m;
  for (auto &v : out.data_)
    v *= s;
  return out;
}

double hermiticity_defect(const CMatrix &m) {
  if (!m.square())
    fail(ErrorKind::Dimension, "hermiticity of a non-square matrix");
  double d = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
  return d;
}

HermitianMatrix::HermitianMatrix(const CMatrix &m, double tol) {
  if (!m.square())
    fail(ErrorKind::Domain, "Hermitian matrix must be square");
  const double scale = std::max(1.0, m.max_abs());
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol * scale))
    fail(ErrorKind::Domain, "matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  return HermitianMatrix(CMatrix::diagonal(values));
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
  return HermitianMatrix(CMatrix(n, n));
}

namespace {

double off_diagonal_mass(const CMatrix &a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c)
        s += std::norm(a(r, c));
  return std::sqrt(s);
}

// A <- U* A U and V <- V U for the unitary U acting on coordinates p, q that
// annihilates a(p, q).
void jacobi_rotate(CMatrix &a, CMatrix &v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0)
    return;
  const cplx phase = std::conj(apq / r);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const cplx upp = c;
  const cplx upq = s;
  const cplx uqp = -s * phase;
  const cplx uqq = c * phase;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

} // namespace

EigenDecomposition hermitian_eig(const HermitianMatrix &input) {
  const std::size_t n = input.dim();
  if (n > kMaxEigenDim)
    fail(ErrorKind::Domain, "eigensolver limited to dimension " +
                                std::to_string(kMaxEigenDim));
  CMatrix a = input.matrix();
  CMatrix v = CMatrix::identity(n);
  const double target = 1e-13 * a.frobenius();

  bool converged = off_diagonal_mass(a) <= target;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        jacobi_rotate(a, v, p, q);
    converged = off_diagonal_mass(a) <= target;
  }
  if (!converged)
    fail(ErrorKind::Numeric, "Jacobi eigensolver did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return a(l, l).real() < a(r, r).real();
  });
  EigenDecomposition out;
  out.values.reserve(n);
  for (std::size_t j : order)
    out.values.push_back(a(j, j).real());
  out.basis = v.columns(order);
  return out;
}

JointSpectrum joint_diag(const HermitianMatrix &z1, const HermitianMatrix &z2,
                         double cluster_tol) {
  if (z1.dim() != z2.dim())
    fail(ErrorKind::Dimension, "joint_diag needs matrices of equal size");
  const CMatrix &a = z1.matrix();
  const CMatrix &b = z2.matrix();
  const double scale = std::max(1.0, a.frobenius() * b.frobenius());
  const double commutator = (a * b - b * a).max_abs();
  if (!(commutator <= 1e-10 * scale))
    fail(ErrorKind::Domain, "matrices do not commute (commutator " +
                                std::to_string(commutator) + ")");

  const EigenDecomposition first = hermitian_eig(z1);
  const std::size_t n = z1.dim();
  double norm = 0.0;
  for (double v : first.values)
    norm = std::max(norm, std::abs(v));
  const double gap = cluster_tol * norm;

  JointSpectrum out;
  out.basis = CMatrix(n, n);
  std::size_t column = 0;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && first.values[end] - first.values[end - 1] <= gap)
      ++end;
    std::vector<std::size_t> cluster(end - start);
    std::iota(cluster.begin(), cluster.end(), start);
    const CMatrix u = first.basis.columns(cluster);
    const CMatrix uh = u.adjoint();
    CMatrix compressed = uh * b * u;
    compressed = 0.5 * (compressed + compressed.adjoint());
    const EigenDecomposition inner =
        hermitian_eig(HermitianMatrix(compressed, 1.0));
    const CMatrix rotated = u * inner.basis;
    for (std::size_t j = 0; j < rotated.cols(); ++j, ++column)
      for (std::size_t r = 0; r < n; ++r)
        out.basis(r, column) = rotated(r, j);
    start = end;
  }

  const CMatrix bh = out.basis.adjoint();
  const CMatrix da = bh * a * out.basis;
  const CMatrix db = bh * b * out.basis;
  out.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    out.values.emplace_back(da(k, k).real(), db(k, k).real());
  return out;
}

ProjectionDefects defect_norms(const CMatrix &p) {
  if (!p.square())
    fail(ErrorKind::Dimension, "defect norms need a square matrix");
  return {(p * p - p).max_abs(), hermiticity_defect(p)};
}

CMatrix direct_sum(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

} // namespace qpsum
