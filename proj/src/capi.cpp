#include "qpsum/qpsum.h"

#include "qpsum/decomposer.hpp"
#include "qpsum/error.hpp"
#include "qpsum/fileio.hpp"
#include "qpsum/matfactory.hpp"
#include "qpsum/region.hpp"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>
#include <tuple>

struct qps_decomposition {
  qpsum::Decomposition value;
};

namespace {

thread_local std::string last_error;

qps_status status_of(qpsum::ErrorKind kind) {
  using qpsum::ErrorKind;
  switch (kind) {
  case ErrorKind::Domain:
    return QPS_ERR_DOMAIN;
  case ErrorKind::Region:
    return QPS_ERR_REGION;
  case ErrorKind::Numeric:
    return QPS_ERR_NUMERIC;
  case ErrorKind::Infeasible:
    return QPS_ERR_INFEASIBLE;
  case ErrorKind::Format:
    return QPS_ERR_FORMAT;
  case ErrorKind::Io:
    return QPS_ERR_IO;
  case ErrorKind::Malformed:
    return QPS_ERR_MALFORMED;
  case ErrorKind::Dimension:
    return QPS_ERR_DIMENSION;
  }
  return QPS_ERR_INTERNAL;
}

qps_status set_error(qps_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F> qps_status guarded(F &&body) {
  last_error.clear();
  try {
    return body();
  } catch (const qpsum::Error &e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc &) {
    return set_error(QPS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return set_error(QPS_ERR_INTERNAL, e.what());
  }
}

qps_status copy_text(const std::string &text, char *buf, size_t cap,
                     size_t *needed) {
  if (needed)
    *needed = text.size() + 1;
  if (buf == nullptr && cap == 0)
    return QPS_OK;
  if (buf == nullptr || cap < text.size() + 1)
    return set_error(QPS_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return QPS_OK;
}

qps_status copy_values(const std::vector<double> &values, double *out,
                       size_t cap, size_t *count) {
  if (count)
    *count = values.size();
  if (out == nullptr && cap == 0)
    return QPS_OK;
  if (out == nullptr || cap < values.size())
    return set_error(QPS_ERR_BUFFER_TOO_SMALL, "output array too small");
  std::copy(values.begin(), values.end(), out);
  return QPS_OK;
}

qps_check check_of(qpsum::Check c) {
  switch (c) {
  case qpsum::Check::Pass:
    return QPS_CHECK_PASS;
  case qpsum::Check::Fail:
    return QPS_CHECK_FAIL;
  case qpsum::Check::NotApplicable:
    return QPS_CHECK_NA;
  }
  return QPS_CHECK_NA;
}

void store(const qpsum::Mat2 &m, double out[4]) {
  std::copy(m.v.begin(), m.v.end(), out);
}

int resolve_n(const qpsum::SpectralPresentation &pres, int n) {
  if (n == 0)
    return qpsum::min_sufficient_n(pres.min(), pres.max());
  return n;
}

qps_status emit(qpsum::Decomposition d, qps_decomposition **out) {
  *out = new qps_decomposition{std::move(d)};
  return QPS_OK;
}

#define QPS_REQUIRE(cond, what)                                                \
  do {                                                                         \
    if (!(cond))                                                               \
      return set_error(QPS_ERR_INVALID_ARGUMENT, what);                        \
  } while (0)

} // namespace

extern "C" {

const char *qps_status_string(qps_status status) {
  switch (status) {
  case QPS_OK:
    return "ok";
  case QPS_ERR_DOMAIN:
    return "domain error";
  case QPS_ERR_REGION:
    return "point outside the attainable region";
  case QPS_ERR_NUMERIC:
    return "numeric error";
  case QPS_ERR_INFEASIBLE:
    return "infeasible";
  case QPS_ERR_FORMAT:
    return "format error";
  case QPS_ERR_IO:
    return "i/o error";
  case QPS_ERR_MALFORMED:
    return "malformed operator";
  case QPS_ERR_DIMENSION:
    return "dimension mismatch";
  case QPS_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case QPS_ERR_BUFFER_TOO_SMALL:
    return "buffer too small";
  case QPS_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *qps_last_error(void) { return last_error.c_str(); }

const char *qps_version(void) { return "1.0.0"; }

qps_status qps_in_region(double x, double y, double tol, int *inside) {
  return guarded([&] {
    QPS_REQUIRE(inside, "inside must not be NULL");
    QPS_REQUIRE(tol >= 0.0, "tol must be nonnegative");
    *inside = qpsum::in_region_a({x, y}, tol) ? 1 : 0;
    return QPS_OK;
  });
}

qps_status qps_region_x_range(double *low, double *high) {
  return guarded([&] {
    QPS_REQUIRE(low && high, "outputs must not be NULL");
    std::tie(*low, *high) = qpsum::region_x_range();
    return QPS_OK;
  });
}

qps_status qps_region_boundary(size_t samples, double *x, double *y) {
  return guarded([&] {
    QPS_REQUIRE(samples >= 2, "need at least two samples");
    QPS_REQUIRE(x && y, "outputs must not be NULL");
    for (size_t i = 0; i < samples; ++i) {
      const double d = -1.0 + 2.0 * static_cast<double>(i) /
                                  static_cast<double>(samples - 1);
      const double s = d * d;
      x[i] = (s + d) / 2.0;
      y[i] = (s - d) / 2.0;
    }
    return QPS_OK;
  });
}

qps_status qps_inf_linear_functional(int n, double *value) {
  return guarded([&] {
    QPS_REQUIRE(value, "value must not be NULL");
    *value = qpsum::inf_linear_functional(n);
    return QPS_OK;
  });
}

qps_status qps_inf_linear_functional_bruteforce(int n, int grid, double *value) {
  return guarded([&] {
    QPS_REQUIRE(value, "value must not be NULL");
    *value = qpsum::inf_linear_functional_bruteforce(n, grid);
    return QPS_OK;
  });
}

qps_status qps_bound_table_get(int n, qps_bound_table *out) {
  return guarded([&] {
    QPS_REQUIRE(out, "out must not be NULL");
    const qpsum::BoundTable t = qpsum::bound_table(n);
    *out = qps_bound_table{};
    out->n = t.n;
    out->norm_low = t.norm_low.to_double();
    out->norm_high = t.norm_high.to_double();
    out->extremal_threshold = t.extremal_threshold.to_double();
    if (t.corridor) {
      out->has_corridor = 1;
      out->m = t.corridor->m;
      out->corridor_low = t.corridor->low.to_double();
      out->corridor_high = t.corridor->high.to_double();
      out->a = t.corridor->a.to_double();
      out->b = t.corridor->b.to_double();
    }
    return QPS_OK;
  });
}

qps_status qps_check_feasibility(double lambda_min, double lambda_max, int n,
                                 qps_verdict *out, char *messages, size_t cap,
                                 size_t *needed) {
  return guarded([&] {
    QPS_REQUIRE(out, "out must not be NULL");
    const qpsum::FeasibilityVerdict v =
        qpsum::check_feasibility(lambda_min, lambda_max, n);
    out->n = v.n;
    out->necessary_norm = check_of(v.necessary_norm);
    out->necessary_extremal = check_of(v.necessary_extremal);
    out->sufficient_corridor = check_of(v.sufficient_corridor);
    std::string text;
    for (const auto &m : v.messages)
      text += m + "\n";
    return copy_text(text, messages, cap, needed);
  });
}

qps_status qps_min_sufficient_n(double lambda_min, double lambda_max, int *n) {
  return guarded([&] {
    QPS_REQUIRE(n, "n must not be NULL");
    *n = qpsum::min_sufficient_n(lambda_min, lambda_max);
    return QPS_OK;
  });
}

qps_status qps_min_necessary_n(double lambda_min, double lambda_max, int *n) {
  return guarded([&] {
    QPS_REQUIRE(n, "n must not be NULL");
    *n = qpsum::min_necessary_n(lambda_min, lambda_max);
    return QPS_OK;
  });
}

qps_status qps_nc_bounds(double c, double *lower, long long *upper) {
  return guarded([&] {
    QPS_REQUIRE(lower && upper, "outputs must not be NULL");
    const qpsum::NcBounds b = qpsum::nc_bounds(c);
    *lower = b.lower;
    *upper = b.upper;
    return QPS_OK;
  });
}

qps_status qps_representability_intervals(int n, double positive[2],
                                          double negative[2]) {
  return guarded([&] {
    QPS_REQUIRE(positive && negative, "outputs must not be NULL");
    const auto r = qpsum::representability_intervals(n);
    positive[0] = r.positive.low;
    positive[1] = r.positive.high;
    negative[0] = r.negative.low;
    negative[1] = r.negative.high;
    return QPS_OK;
  });
}

qps_status qps_make_pq(double x, double y, double tol, double p[4],
                       double q[4]) {
  return guarded([&] {
    QPS_REQUIRE(p && q, "outputs must not be NULL");
    QPS_REQUIRE(tol >= 0.0, "tol must be nonnegative");
    const auto pq = qpsum::make_pq({x, y}, tol);
    store(pq.p, p);
    store(pq.q, q);
    return QPS_OK;
  });
}

qps_status qps_conjugate_by_sign(const double m[4], double out[4]) {
  return guarded([&] {
    QPS_REQUIRE(m && out, "arguments must not be NULL");
    qpsum::Mat2 in;
    std::copy(m, m + 4, in.v.begin());
    store(qpsum::conjugate_by_sign(in), out);
    return QPS_OK;
  });
}

qps_status qps_sharpness_family(int n, double *q, double *p, double sum[4]) {
  return guarded([&] {
    QPS_REQUIRE(sum, "sum must not be NULL");
    const auto family = qpsum::sharpness_family(n);
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (q)
        store(family[i].q, q + 4 * i);
      if (p)
        store(family[i].p, p + 4 * i);
    }
    store(qpsum::sharpness_sum(family), sum);
    return QPS_OK;
  });
}

qps_status qps_verify_rank1_projection(const double m[4], double tol, int *ok) {
  return guarded([&] {
    QPS_REQUIRE(m && ok, "arguments must not be NULL");
    QPS_REQUIRE(tol > 0.0, "tol must be positive");
    qpsum::Mat2 in;
    std::copy(m, m + 4, in.v.begin());
    *ok = qpsum::verify_rank1_projection(in, tol) ? 1 : 0;
    return QPS_OK;
  });
}

qps_status qps_decompose_spectrum(const double *eigenvalues, size_t count,
                                  int n, qps_decomposition **out) {
  return guarded([&] {
    QPS_REQUIRE(out, "out must not be NULL");
    QPS_REQUIRE(eigenvalues && count > 0, "spectrum must be nonempty");
    const auto pres = qpsum::SpectralPresentation::from_values(
        std::vector<double>(eigenvalues, eigenvalues + count));
    return emit(qpsum::decompose(pres, resolve_n(pres, n)), out);
  });
}

qps_status qps_decompose_matrix(const double *real, const double *imag,
                                size_t dim, int n, qps_decomposition **out) {
  return guarded([&] {
    QPS_REQUIRE(out, "out must not be NULL");
    QPS_REQUIRE(real && dim > 0, "matrix must be nonempty");
    qpsum::CMatrix m(dim, dim);
    for (size_t r = 0; r < dim; ++r)
      for (size_t c = 0; c < dim; ++c)
        m(r, c) = qpsum::cplx(real[r * dim + c], imag ? imag[r * dim + c] : 0.0);
    const auto pres = qpsum::inflate(
        qpsum::HermitianMatrix(m, qpsum::kMatrixFileHermitianTol));
    return emit(qpsum::decompose(pres, resolve_n(pres, n)), out);
  });
}

qps_status qps_decompose_file(const char *input_path, int n,
                              qps_decomposition **out) {
  return guarded([&] {
    QPS_REQUIRE(out && input_path, "arguments must not be NULL");
    const auto pres = qpsum::load_spectral_input(input_path);
    return emit(qpsum::decompose(pres, resolve_n(pres, n)), out);
  });
}

qps_status qps_input_spectrum(const char *input_path, double *values,
                              size_t cap, size_t *count) {
  return guarded([&] {
    QPS_REQUIRE(input_path, "input_path must not be NULL");
    const auto pres = qpsum::load_spectral_input(input_path);
    return copy_values(pres.eigenvalues, values, cap, count);
  });
}

qps_status qps_decomposition_load(const char *path, qps_decomposition **out) {
  return guarded([&] {
    QPS_REQUIRE(out && path, "arguments must not be NULL");
    return emit(qpsum::load_decomposition(path), out);
  });
}

qps_status qps_decomposition_save(const qps_decomposition *d, const char *path) {
  return guarded([&] {
    QPS_REQUIRE(d && path, "arguments must not be NULL");
    qpsum::save_decomposition(d->value, path);
    return QPS_OK;
  });
}

qps_status qps_decomposition_to_json(const qps_decomposition *d, char *buf,
                                     size_t cap, size_t *needed) {
  return guarded([&] {
    QPS_REQUIRE(d, "decomposition must not be NULL");
    return copy_text(qpsum::decomposition_to_json(d->value), buf, cap, needed);
  });
}

int qps_decomposition_n(const qps_decomposition *d) { return d ? d->value.n : 0; }

int qps_decomposition_m(const qps_decomposition *d) { return d ? d->value.m : 0; }

size_t qps_decomposition_rule_count(const qps_decomposition *d) {
  if (!d)
    return 0;
  size_t total = 0;
  for (const auto &pair : d->value.pairs)
    total += pair.q.rules().size() + pair.p.rules().size();
  return total;
}

qps_status qps_decomposition_spectrum(const qps_decomposition *d, double *values,
                                      size_t cap, size_t *count) {
  return guarded([&] {
    QPS_REQUIRE(d, "decomposition must not be NULL");
    return copy_values(d->value.spectrum.eigenvalues, values, cap, count);
  });
}

void qps_decomposition_free(qps_decomposition *d) { delete d; }

qps_status qps_decomposition_verify(const qps_decomposition *d, long long window,
                                    double tol, unsigned threads,
                                    qps_verify_summary *summary, char *report,
                                    size_t cap, size_t *needed) {
  return guarded([&] {
    QPS_REQUIRE(d, "decomposition must not be NULL");
    QPS_REQUIRE(tol >= 0.0, "tol must be nonnegative");
    const auto r =
        qpsum::verify_decomposition(d->value, window, tol, std::max(1u, threads));
    if (summary) {
      summary->passed = r.passed ? 1 : 0;
      summary->max_entry_defect = r.max_entry_defect;
      summary->projection_failures = r.projection_failures.size();
      summary->coverage_failures = r.coverage_failures.size();
      summary->sector_failures = r.sector_failures.size();
      summary->group_offdiag_defect = qpsum::group_offdiag_defect(d->value);
    }
    return copy_text(r.to_text(), report, cap, needed);
  });
}

} // extern "C"
