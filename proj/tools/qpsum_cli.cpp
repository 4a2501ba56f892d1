// qpsum command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 ok, 1 usage/format/io, 2 infeasible, 3 verification failed.

#include "qpsum/qpsum.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitVerifyFailed = 3;

int report_error(const char *context, qps_status status) {
  std::fprintf(stderr, "qpsum: %s: %s: %s\n", context, qps_status_string(status),
               qps_last_error());
  return kExitUsage;
}

const char *check_text(qps_check c) {
  switch (c) {
  case QPS_CHECK_PASS:
    return "pass";
  case QPS_CHECK_FAIL:
    return "FAIL";
  case QPS_CHECK_NA:
    return "n/a";
  }
  return "?";
}

struct Verdict {
  qps_verdict v{};
  std::string messages;
};

std::optional<Verdict> feasibility(double lmin, double lmax, int n) {
  Verdict out;
  size_t needed = 0;
  qps_status st = qps_check_feasibility(lmin, lmax, n, &out.v, nullptr, 0, &needed);
  if (st != QPS_OK) {
    report_error("feasibility", st);
    return std::nullopt;
  }
  std::vector<char> buf(needed);
  st = qps_check_feasibility(lmin, lmax, n, &out.v, buf.data(), buf.size(), &needed);
  if (st != QPS_OK) {
    report_error("feasibility", st);
    return std::nullopt;
  }
  out.messages = buf.data();
  return out;
}

void print_verdict(const Verdict &v, double lmin, double lmax) {
  std::printf("spectrum: [%.12g, %.12g]\n", lmin, lmax);
  std::printf("n = %d\n", v.v.n);
  std::printf("  necessary norm bound      : %s\n", check_text(v.v.necessary_norm));
  std::printf("  necessary extremal bound  : %s\n", check_text(v.v.necessary_extremal));
  std::printf("  constructive corridor     : %s\n", check_text(v.v.sufficient_corridor));
  if (!v.messages.empty())
    std::printf("%s", v.messages.c_str());
}

void print_mat(const char *name, int index, const double *m) {
  std::printf("%s_%d = [[% .17g, % .17g], [% .17g, % .17g]]\n", name, index, m[0],
              m[1], m[2], m[3]);
}

int cmd_decompose(const std::string &input, const std::string &n_text,
                  const std::string &output) {
  size_t count = 0;
  qps_status st = qps_input_spectrum(input.c_str(), nullptr, 0, &count);
  if (st != QPS_OK)
    return report_error(input.c_str(), st);
  std::vector<double> spectrum(count);
  st = qps_input_spectrum(input.c_str(), spectrum.data(), spectrum.size(), &count);
  if (st != QPS_OK)
    return report_error(input.c_str(), st);
  const double lmin = spectrum.front();
  const double lmax = spectrum.back();

  int n = 0;
  if (n_text == "auto") {
    st = qps_min_sufficient_n(lmin, lmax, &n);
    if (st != QPS_OK)
      return report_error("auto n", st);
    std::printf("auto: smallest even n with the spectrum in its corridor is %d\n", n);
  } else {
    try {
      std::size_t used = 0;
      n = std::stoi(n_text, &used);
      if (used != n_text.size())
        throw std::invalid_argument(n_text);
    } catch (const std::exception &) {
      std::fprintf(stderr, "qpsum: -n expects an integer or 'auto', got '%s'\n",
                   n_text.c_str());
      return kExitUsage;
    }
    if (n < 4 || n % 2 != 0) {
      std::fprintf(stderr, "qpsum: the construction needs an even n >= 4, got %d\n", n);
      return kExitUsage;
    }
  }

  const auto verdict = feasibility(lmin, lmax, n);
  if (!verdict)
    return kExitUsage;
  print_verdict(*verdict, lmin, lmax);
  if (verdict->v.sufficient_corridor != QPS_CHECK_PASS) {
    std::printf("infeasible: no decomposition constructed for n = %d\n", n);
    return kExitInfeasible;
  }

  qps_decomposition *d = nullptr;
  st = qps_decompose_file(input.c_str(), n, &d);
  if (st == QPS_ERR_INFEASIBLE) {
    std::printf("infeasible: %s\n", qps_last_error());
    return kExitInfeasible;
  }
  if (st != QPS_OK)
    return report_error("decompose", st);
  st = qps_decomposition_save(d, output.c_str());
  const size_t rules = qps_decomposition_rule_count(d);
  qps_decomposition_free(d);
  if (st != QPS_OK)
    return report_error(output.c_str(), st);
  std::printf("wrote %s: %d pairs (Q_i, P_i), %zu block rules\n", output.c_str(), n, rules);
  return kExitOk;
}

int cmd_verify(const std::string &path, long long window, double tol,
               unsigned threads) {
  qps_decomposition *d = nullptr;
  qps_status st = qps_decomposition_load(path.c_str(), &d);
  if (st != QPS_OK)
    return report_error(path.c_str(), st);

  qps_verify_summary summary{};
  size_t needed = 0;
  st = qps_decomposition_verify(d, window, tol, threads, &summary, nullptr, 0, &needed);
  std::vector<char> report(needed);
  if (st == QPS_OK)
    st = qps_decomposition_verify(d, window, tol, threads, &summary, report.data(),
                                  report.size(), &needed);
  const int n = qps_decomposition_n(d);
  qps_decomposition_free(d);
  if (st != QPS_OK)
    return report_error("verify", st);
  std::printf("decomposition: %s (n = %d)\n", path.c_str(), n);
  std::printf("%s", report.data());
  std::printf("group block cancellation: %.3e\n", summary.group_offdiag_defect);
  return summary.passed ? kExitOk : kExitVerifyFailed;
}

int cmd_feasibility(std::optional<double> lmin, std::optional<double> lmax,
                    std::optional<double> c, int n_from, int n_to) {
  if (c) {
    if (lmin || lmax) {
      std::fprintf(stderr, "qpsum: give either --c or --lmin/--lmax\n");
      return kExitUsage;
    }
    lmin = -*c;
    lmax = *c;
  }
  if (!lmin || !lmax) {
    std::fprintf(stderr, "qpsum: need --lmin and --lmax, or --c\n");
    return kExitUsage;
  }
  if (*lmin > *lmax) {
    std::fprintf(stderr, "qpsum: --lmin exceeds --lmax\n");
    return kExitUsage;
  }

  int necessary = 0;
  int sufficient = 0;
  qps_status st = qps_min_necessary_n(*lmin, *lmax, &necessary);
  if (st != QPS_OK)
    return report_error("necessary n", st);
  st = qps_min_sufficient_n(*lmin, *lmax, &sufficient);
  if (st != QPS_OK)
    return report_error("sufficient n", st);

  if (n_from < 1)
    n_from = 1;
  if (n_to < n_from)
    n_to = std::max(n_from, sufficient);

  std::printf("spectrum: [%.12g, %.12g]\n", *lmin, *lmax);
  std::printf("%4s %10s %8s %14s %14s %8s %12s %12s  %-6s %-6s %-6s\n", "n", "-n/8",
              "n", "extremal", "corr_low", "corr_hi", "a", "b", "norm", "extr",
              "corr");
  for (int n = n_from; n <= n_to; ++n) {
    qps_bound_table t{};
    st = qps_bound_table_get(n, &t);
    if (st != QPS_OK)
      return report_error("bound table", st);
    const auto v = feasibility(*lmin, *lmax, n);
    if (!v)
      return kExitUsage;
    if (t.has_corridor)
      std::printf("%4d %10.6g %8.6g %14.8g %14.8g %8.6g %12.8g %12.8g  %-6s %-6s %-6s\n",
                  n, t.norm_low, t.norm_high, t.extremal_threshold, t.corridor_low,
                  t.corridor_high, t.a, t.b, check_text(v->v.necessary_norm),
                  check_text(v->v.necessary_extremal),
                  check_text(v->v.sufficient_corridor));
    else
      std::printf("%4d %10.6g %8.6g %14.8g %14s %8s %12s %12s  %-6s %-6s %-6s\n", n,
                  t.norm_low, t.norm_high, t.extremal_threshold, "-", "-", "-", "-",
                  check_text(v->v.necessary_norm), check_text(v->v.necessary_extremal),
                  check_text(v->v.sufficient_corridor));
  }
  std::printf("smallest n passing the necessary bounds: %d\n", necessary);
  std::printf("smallest even n with a constructive decomposition: %d\n", sufficient);
  if (c) {
    double lower = 0.0;
    long long upper = 0;
    st = qps_nc_bounds(*c, &lower, &upper);
    if (st != QPS_OK)
      return report_error("n(c) bounds", st);
    std::printf("n(c) for ||x|| <= %.12g: lower %.6f, upper %lld (8c+8/3 = %.6f, "
                "8c+10 = %.6f)\n",
                *c, lower, upper, 8.0 * *c + 8.0 / 3.0, 8.0 * *c + 10.0);
  }
  return kExitOk;
}

int cmd_region_membership(double x, double y, double tol) {
  int inside = 0;
  const qps_status st = qps_in_region(x, y, tol, &inside);
  if (st != QPS_OK)
    return report_error("membership", st);
  if (!inside) {
    std::printf("outside\n");
    return kExitOk;
  }
  const double s = x + y;
  const double d = x - y;
  const bool boundary = std::abs(d * d - s) <= 1e-12 || std::abs(s - 1.0) <= 1e-12;
  std::printf("inside (%s)\n", boundary ? "boundary" : "interior");
  return kExitOk;
}

int cmd_region_boundary(int samples) {
  if (samples < 2) {
    std::fprintf(stderr, "qpsum: --samples must be at least 2\n");
    return kExitUsage;
  }
  std::vector<double> x(samples), y(samples);
  const qps_status st = qps_region_boundary(samples, x.data(), y.data());
  if (st != QPS_OK)
    return report_error("boundary", st);
  std::printf("x,y\n");
  for (int i = 0; i < samples; ++i)
    std::printf("%.17g,%.17g\n", x[i], y[i]);
  return kExitOk;
}

int cmd_region_extremal(int n, int grid) {
  double closed = 0.0;
  double brute = 0.0;
  qps_status st = qps_inf_linear_functional(n, &closed);
  if (st != QPS_OK)
    return report_error("extremal", st);
  st = qps_inf_linear_functional_bruteforce(n, grid, &brute);
  if (st != QPS_OK)
    return report_error("extremal", st);
  std::printf("inf { y + (n-1) x : (x, y) in A }, n = %d\n", n);
  std::printf("closed form: %.12g\n", closed);
  std::printf("brute force (%dx%d grid): %.12g\n", grid, grid, brute);
  std::printf("difference: %.3e\n", std::abs(closed - brute));
  return kExitOk;
}

int cmd_sharpness(int n) {
  if (n < 2 || n % 2 != 0) {
    std::fprintf(stderr, "qpsum: sharpness needs an even n >= 2, got %d\n", n);
    return kExitUsage;
  }
  std::vector<double> q(4 * static_cast<size_t>(n)), p(4 * static_cast<size_t>(n));
  double sum[4];
  const qps_status st = qps_sharpness_family(n, q.data(), p.data(), sum);
  if (st != QPS_OK)
    return report_error("sharpness", st);
  for (int i = 0; i < n; ++i) {
    print_mat("Q", i + 1, &q[4 * i]);
    print_mat("P", i + 1, &p[4 * i]);
  }
  std::printf("sum Q_i P_i = [[% .17g, % .17g], [% .17g, % .17g]]\n", sum[0], sum[1],
              sum[2], sum[3]);
  const double expected[4] = {-n / 8.0, 0.0, 0.0, 3.0 * n / 8.0};
  double defect = 0.0;
  for (int i = 0; i < 4; ++i)
    defect = std::max(defect, std::abs(sum[i] - expected[i]));
  std::printf("expected diag(%.12g, %.12g); defect %.3e\n", expected[0], expected[3],
              defect);
  return defect <= 1e-12 ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sums of products of pairs of orthogonal projections"};
  app.require_subcommand(1);
  int result = kExitOk;

  auto *decompose = app.add_subcommand("decompose", "decompose x (x) 1 into n products QP");
  std::string input, n_text = "auto", output;
  decompose->add_option("input", input, "matrix or spectrum JSON file")->required();
  decompose->add_option("-n", n_text, "even number of summands, or 'auto'");
  decompose->add_option("-o,--out", output, "decomposition file to write")->required();
  decompose->callback([&] { result = cmd_decompose(input, n_text, output); });

  auto *verify = app.add_subcommand("verify", "check a decomposition file");
  std::string dec_path;
  long long window = 32;
  double tol = 1e-9;
  unsigned threads = 1;
  verify->add_option("decomposition", dec_path, "decomposition JSON file")->required();
  verify->add_option("-T,--window", window, "copies per label in the check window");
  verify->add_option("--tol", tol, "entry tolerance");
  verify->add_option("--threads", threads, "parallel entry scan");
  verify->callback([&] { result = cmd_verify(dec_path, window, tol, threads); });

  auto *feas = app.add_subcommand("feasibility", "bound table and verdicts");
  std::optional<double> lmin, lmax, c;
  int n_from = 1, n_to = 0;
  feas->add_option("--lmin", lmin, "smallest eigenvalue");
  feas->add_option("--lmax", lmax, "largest eigenvalue");
  feas->add_option("--c", c, "norm bound: spectrum in [-c, c]");
  feas->add_option("--n-from", n_from, "first table row");
  feas->add_option("--n-to", n_to, "last table row (default: first sufficient n)");
  feas->callback([&] { result = cmd_feasibility(lmin, lmax, c, n_from, n_to); });

  auto *region = app.add_subcommand("region", "the attainable set A");
  region->require_subcommand(1);
  auto *membership = region->add_subcommand("membership", "test a point");
  double px = 0.0, py = 0.0, ptol = 0.0;
  membership->add_option("x", px)->required();
  membership->add_option("y", py)->required();
  membership->add_option("--tol", ptol, "membership slack");
  membership->callback([&] { result = cmd_region_membership(px, py, ptol); });
  auto *boundary = region->add_subcommand("boundary", "CSV of the parabolic boundary");
  int samples = 2001;
  boundary->add_option("--samples", samples, "number of rows");
  boundary->callback([&] { result = cmd_region_boundary(samples); });
  auto *extremal = region->add_subcommand("extremal", "inf of y + (n-1) x over A");
  int ext_n = 0, grid = 2001;
  extremal->add_option("n", ext_n)->required();
  extremal->add_option("--grid", grid, "brute-force grid size");
  extremal->callback([&] { result = cmd_region_extremal(ext_n, grid); });

  auto *sharp = app.add_subcommand("sharpness", "extremal 2x2 family");
  int sharp_n = 0;
  sharp->add_option("n", sharp_n)->required();
  sharp->callback([&] { result = cmd_sharpness(sharp_n); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }
  return result;
}
