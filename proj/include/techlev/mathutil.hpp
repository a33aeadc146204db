#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace techlev {

// regularized incomplete beta I_x(a, b), continued fraction (Lentz)
double beta_inc(double a, double b, double x);

// two-sided p for a t statistic against Student-t with df degrees of freedom
double student_t_two_sided_p(double t, double df);

// log of the binomial coefficient via lgamma
double log_choose(double n, double k);

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0, median = 0, stdev = 0, min = 0, max = 0, q25 = 0, q75 = 0;
};

// quantiles by linear interpolation over the sorted sample; stdev uses n-1
SampleSummary summarize(std::vector<double> values);
double quantile_sorted(const std::vector<double>& sorted, double p);

struct QrSolve {
  std::vector<double> beta;      // k coefficients
  std::vector<double> cov_diag;  // diagonal of (X'X)^-1
  double sse = 0;                // residual sum of squares
};

// least squares via Householder QR on the n x k row-major design matrix.
// throws StatsError on rank deficiency, naming the offending column.
QrSolve qr_least_squares(const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& y,
                         const std::vector<std::string>& column_names);

} // namespace techlev
