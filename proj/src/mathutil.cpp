#include "techlev/mathutil.hpp"

#include "techlev/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace techlev {

namespace {

// continued fraction for the incomplete beta, modified Lentz
double beta_cf(double a, double b, double x) {
  constexpr int max_iter = 300;
  constexpr double eps = 3e-14;
  constexpr double tiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw StatsError("incomplete beta did not converge");
}

} // namespace

double beta_inc(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (df <= 0) throw StatsError("t distribution needs positive degrees of freedom");
  if (!std::isfinite(t)) return 0.0;
  return beta_inc(df / 2.0, 0.5, df / (df + t * t));
}

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw StatsError("quantile of empty sample");
  if (sorted.size() == 1) return sorted[0];
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SampleSummary summarize(std::vector<double> values) {
  SampleSummary s;
  s.n = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.median = quantile_sorted(values, 0.5);
  s.q25 = quantile_sorted(values, 0.25);
  s.q75 = quantile_sorted(values, 0.75);
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(ss / (static_cast<double>(values.size()) - 1.0));
  }
  return s;
}

QrSolve qr_least_squares(const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& y,
                         const std::vector<std::string>& column_names) {
  const std::size_t n = rows.size();
  if (n == 0) throw StatsError("least squares needs at least one row");
  const std::size_t k = rows[0].size();
  if (k == 0 || y.size() != n) throw StatsError("design/response shape mismatch");
  if (n <= k) throw StatsError("least squares needs more rows than columns");

  // column-major working copy of X, plus the response
  std::vector<double> a(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != k) throw StatsError("ragged design matrix");
    for (std::size_t j = 0; j < k; ++j) a[j * n + i] = rows[i][j];
  }
  std::vector<double> qy = y;

  // scale reference for the rank test
  double xnorm = 0;
  for (double v : a) xnorm = std::max(xnorm, std::fabs(v));
  if (xnorm == 0) xnorm = 1;

  std::vector<double> rdiag(k);
  for (std::size_t j = 0; j < k; ++j) {
    double norm = 0;
    for (std::size_t i = j; i < n; ++i) norm += a[j * n + i] * a[j * n + i];
    norm = std::sqrt(norm);
    if (norm <= xnorm * 1e-12 * static_cast<double>(n)) {
      const std::string name =
          j < column_names.size() ? column_names[j] : "column " + std::to_string(j);
      throw StatsError("design matrix is rank deficient at " + name,
                       "{\"error\":\"rank_deficient\",\"column\":\"" + name + "\"}");
    }
    if (a[j * n + j] > 0) norm = -norm;
    for (std::size_t i = j; i < n; ++i) a[j * n + i] /= norm;
    a[j * n + j] -= 1.0;
    // apply the reflector to the remaining columns and to y
    for (std::size_t c = j + 1; c < k; ++c) {
      double dot = 0;
      for (std::size_t i = j; i < n; ++i) dot += a[j * n + i] * a[c * n + i];
      dot /= a[j * n + j];
      for (std::size_t i = j; i < n; ++i) a[c * n + i] += dot * a[j * n + i];
    }
    double dot = 0;
    for (std::size_t i = j; i < n; ++i) dot += a[j * n + i] * qy[i];
    dot /= a[j * n + j];
    for (std::size_t i = j; i < n; ++i) qy[i] += dot * a[j * n + i];
    rdiag[j] = norm;
  }

  QrSolve out;
  out.beta.assign(k, 0.0);
  for (std::size_t j = k; j-- > 0;) {
    double v = qy[j];
    for (std::size_t c = j + 1; c < k; ++c) v -= a[c * n + j] * out.beta[c];
    out.beta[j] = v / rdiag[j];
  }

  out.sse = 0;
  for (std::size_t i = k; i < n; ++i) out.sse += qy[i] * qy[i];

  // invert R (upper triangular, rdiag on the diagonal, strict upper part
  // left in place above the reflectors); covariance diagonal of (X'X)^-1
  // is then the row norms of R^-1
  std::vector<double> rinv(k * k, 0.0);
  auto r_at = [&](std::size_t i, std::size_t j) -> double {
    return i == j ? rdiag[i] : a[j * n + i];
  };
  for (std::size_t j = 0; j < k; ++j) {
    rinv[j * k + j] = 1.0 / rdiag[j];
    for (std::size_t i = j; i-- > 0;) {
      double v = 0;
      for (std::size_t c = i + 1; c <= j; ++c) v += r_at(i, c) * rinv[c * k + j];
      rinv[i * k + j] = -v / rdiag[i];
    }
  }
  out.cov_diag.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double v = 0;
    for (std::size_t j = i; j < k; ++j) v += rinv[i * k + j] * rinv[i * k + j];
    out.cov_diag[i] = v;
  }
  return out;
}

} // namespace techlev
