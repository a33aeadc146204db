#pragma once

#include "techlev/corpus.hpp"
#include "techlev/metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace techlev {

struct RegressionResult {
  std::vector<std::string> names;
  std::vector<double> estimates;
  std::vector<double> std_errors;
  std::vector<double> t_stats;
  std::vector<double> p_values;
  double r_squared = 0;
  double adj_r_squared = 0;
  double rmse = 0;
  std::size_t n = 0;
};

struct RegressionDataset {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::vector<double> response;
  // per-reason counts (a row may hit several); excluded_total counts rows
  std::size_t excluded_missing_prev = 0;
  std::size_t excluded_lambda_zero = 0;
  std::size_t excluded_rho_zero = 0;
  std::size_t excluded_total = 0;
};

// columns [1, log(prev+1), log(lambda_dir), log(rho), cos(theta-45deg),
// sin(theta)]; response log(rel_interval+1); natural logs
RegressionDataset build_regression_dataset(const std::vector<ChangeRecord>& records,
                                           SizeClass size_class);

RegressionResult ols_fit(const RegressionDataset& data);

// Pearson r on ln-transformed pairs; p from the t transform against t(n-2)
struct Correlation {
  double r = 0;
  double p_value = 1;
  std::size_t n = 0;
};
Correlation pearson_log(const std::vector<double>& xs, const std::vector<double>& ys);

double payoff_ratio(double lambda, double beta);

struct ContingencyTable {
  std::int64_t exposed_vuln = 0;   // lambda_dir > threshold, vulnerable
  std::int64_t exposed_safe = 0;
  std::int64_t unexposed_vuln = 0;
  std::int64_t unexposed_safe = 0;
  double threshold = 0;

  std::int64_t total() const {
    return exposed_vuln + exposed_safe + unexposed_vuln + unexposed_safe;
  }
};

struct OddsResult {
  double odds_ratio = 0;
  double ci_low = 0;  // 95%, Woolf logit
  double ci_high = 0;
  double fisher_p = 1;
};

ContingencyTable contingency(const std::vector<ChangeRecord>& records,
                             double lambda_threshold, SizeClass size_class);

// two-sided: sum of hypergeometric probabilities <= observed (small slack
// for float ties); defined for any table with positive margins
double fisher_exact_p(const ContingencyTable& t);

// throws StatsError when a cell is zero (detail carries the fisher p)
OddsResult odds_analysis(const ContingencyTable& t);

struct KdeOptions {
  std::optional<double> bandwidth; // default: Silverman 1.06 sigma n^-1/5
  int grid = 360;
  bool circular = false; // wrap kernels with period 360
};

// Gaussian KDE on a uniform grid over [-45, 315], both ends included
std::vector<std::pair<double, double>> kde_theta(const std::vector<double>& values,
                                                 const KdeOptions& opts);

struct MaxLevPoint {
  std::string ga;
  std::int64_t vuln_count = 0; // max own+dep vulns over the GA's instances
  double max_lambda_dir = 0;
};

std::vector<MaxLevPoint> max_leverage_by_vuln_count(const Corpus& corpus);

} // namespace techlev
