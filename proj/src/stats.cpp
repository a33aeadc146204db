#include "techlev/stats.hpp"

#include "techlev/errors.hpp"
#include "techlev/mathutil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace techlev {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegToRad = kPi / 180.0;

} // namespace

RegressionDataset build_regression_dataset(const std::vector<ChangeRecord>& records,
                                           SizeClass size_class) {
  RegressionDataset d;
  d.names = {"intercept",  "log_rel_interval_prev", "log_lambda_dir",
             "log_rho",    "cos_theta_minus_45",    "sin_theta"};
  for (const auto& rec : records) {
    if (rec.size_class != size_class) continue;
    bool excluded = false;
    if (!rec.rel_interval_prev) {
      ++d.excluded_missing_prev;
      excluded = true;
    }
    if (rec.lambda_dir == 0.0) {
      ++d.excluded_lambda_zero;
      excluded = true;
    }
    if (rec.rho == 0.0) {
      ++d.excluded_rho_zero;
      excluded = true;
    }
    if (excluded) {
      ++d.excluded_total;
      continue;
    }
    d.rows.push_back({1.0,
                      std::log(static_cast<double>(*rec.rel_interval_prev) + 1.0),
                      std::log(rec.lambda_dir), std::log(rec.rho),
                      std::cos((rec.theta - 45.0) * kDegToRad),
                      std::sin(rec.theta * kDegToRad)});
    d.response.push_back(std::log(static_cast<double>(rec.rel_interval) + 1.0));
  }
  if (d.rows.empty()) {
    throw StatsError("regression dataset is empty after exclusions",
                     "{\"error\":\"empty_dataset\"}");
  }
  return d;
}

RegressionResult ols_fit(const RegressionDataset& data) {
  const std::size_t n = data.rows.size();
  const std::size_t k = data.names.size();
  if (n <= k) {
    throw StatsError("too few rows (" + std::to_string(n) + ") for " +
                         std::to_string(k) + " coefficients",
                     "{\"error\":\"too_few_rows\"}");
  }
  const QrSolve q = qr_least_squares(data.rows, data.response, data.names);

  RegressionResult r;
  r.names = data.names;
  r.estimates = q.beta;
  r.n = n;
  const double df = static_cast<double>(n - k);
  const double sigma2 = q.sse / df;
  r.rmse = std::sqrt(sigma2);
  for (std::size_t i = 0; i < k; ++i) {
    const double se = std::sqrt(sigma2 * q.cov_diag[i]);
    r.std_errors.push_back(se);
    const double t = se > 0 ? q.beta[i] / se : 0.0;
    r.t_stats.push_back(t);
    r.p_values.push_back(student_t_two_sided_p(t, df));
  }
  double mean = 0;
  for (double y : data.response) mean += y;
  mean /= static_cast<double>(n);
  double tss = 0;
  for (double y : data.response) tss += (y - mean) * (y - mean);
  r.r_squared = tss > 0 ? 1.0 - q.sse / tss : 0.0;
  if (r.r_squared < 0) r.r_squared = 0;
  r.adj_r_squared = 1.0 - (1.0 - r.r_squared) *
                              (static_cast<double>(n) - 1.0) / df;
  return r;
}

Correlation pearson_log(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw StatsError("correlation input length mismatch");
  const std::size_t n = xs.size();
  if (n < 3) throw StatsError("correlation needs at least 3 pairs");
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (xs[i] <= 0 || ys[i] <= 0) {
      throw StatsError("correlation inputs must be positive (exclude zeros upstream)");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    syy += (ly[i] - my) * (ly[i] - my);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0 || syy == 0) {
    throw StatsError("correlation undefined: zero variance after log transform",
                     "{\"error\":\"zero_variance\"}");
  }
  Correlation c;
  c.n = n;
  c.r = sxy / std::sqrt(sxx * syy);
  if (c.r > 1) c.r = 1;
  if (c.r < -1) c.r = -1;
  if (std::fabs(c.r) >= 1.0) {
    c.p_value = 0.0;
  } else {
    const double df = static_cast<double>(n - 2);
    const double t = c.r * std::sqrt(df / (1.0 - c.r * c.r));
    c.p_value = student_t_two_sided_p(t, df);
  }
  return c;
}

double payoff_ratio(double lambda, double beta) {
  if (lambda <= 0) throw StatsError("payoff ratio needs a positive leverage");
  return std::pow(lambda, beta);
}

ContingencyTable contingency(const std::vector<ChangeRecord>& records,
                             double lambda_threshold, SizeClass size_class) {
  ContingencyTable t;
  t.threshold = lambda_threshold;
  std::set<std::string> seen;
  for (const auto& rec : records) {
    if (rec.size_class != size_class) continue;
    if (!seen.insert(rec.gav_to.gav()).second) continue;
    const bool exposed = rec.lambda_dir > lambda_threshold;
    if (exposed) {
      rec.is_vuln ? ++t.exposed_vuln : ++t.exposed_safe;
    } else {
      rec.is_vuln ? ++t.unexposed_vuln : ++t.unexposed_safe;
    }
  }
  return t;
}

double fisher_exact_p(const ContingencyTable& t) {
  const double a = static_cast<double>(t.exposed_vuln);
  const double b = static_cast<double>(t.exposed_safe);
  const double c = static_cast<double>(t.unexposed_vuln);
  const double d = static_cast<double>(t.unexposed_safe);
  const double r1 = a + b, r2 = c + d, c1 = a + c, n = a + b + c + d;
  if (n <= 0) throw StatsError("fisher test on an empty table");
  if (r1 == 0 || r2 == 0 || c1 == 0 || c1 == n) return 1.0;

  auto log_pmf = [&](double x) {
    return log_choose(r1, x) + log_choose(r2, c1 - x) - log_choose(n, c1);
  };
  const double lp_obs = log_pmf(a);
  const double cutoff = lp_obs + std::log1p(1e-7); // float-tie slack
  const double lo = std::max(0.0, c1 - r2);
  const double hi = std::min(r1, c1);
  double p = 0;
  for (double x = lo; x <= hi; x += 1.0) {
    const double lp = log_pmf(x);
    if (lp <= cutoff) p += std::exp(lp);
  }
  return std::min(p, 1.0);
}

OddsResult odds_analysis(const ContingencyTable& t) {
  const double fp = fisher_exact_p(t);
  if (t.exposed_vuln == 0 || t.exposed_safe == 0 || t.unexposed_vuln == 0 ||
      t.unexposed_safe == 0) {
    std::ostringstream detail;
    detail << "{\"error\":\"zero_cell\",\"fisher_p\":" << fp << "}";
    throw StatsError("odds ratio undefined: contingency table has a zero cell",
                     detail.str());
  }
  const double a = static_cast<double>(t.exposed_vuln);
  const double b = static_cast<double>(t.exposed_safe);
  const double c = static_cast<double>(t.unexposed_vuln);
  const double d = static_cast<double>(t.unexposed_safe);
  OddsResult r;
  r.odds_ratio = (a / b) / (c / d);
  const double half = 1.96 * std::sqrt(1 / a + 1 / b + 1 / c + 1 / d);
  r.ci_low = std::exp(std::log(r.odds_ratio) - half);
  r.ci_high = std::exp(std::log(r.odds_ratio) + half);
  r.fisher_p = fp;
  return r;
}

std::vector<std::pair<double, double>> kde_theta(const std::vector<double>& values,
                                                 const KdeOptions& opts) {
  if (values.empty()) throw StatsError("kde needs at least one value");
  if (opts.grid < 2) throw StatsError("kde grid must have at least 2 points");
  const std::size_t n = values.size();

  double h;
  if (opts.bandwidth) {
    h = *opts.bandwidth;
    if (h <= 0) throw StatsError("kde bandwidth must be positive");
  } else {
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = n > 1 ? std::sqrt(ss / (static_cast<double>(n) - 1.0)) : 0.0;
    if (sd == 0) {
      throw StatsError(
          "kde bandwidth undefined for a single distinct value; pass an explicit "
          "bandwidth",
          "{\"error\":\"degenerate_sample\"}");
    }
    h = 1.06 * sd * std::pow(static_cast<double>(n), -0.2);
  }

  const double lo = -45.0, hi = 315.0;
  const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * kPi));
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(opts.grid));
  for (int i = 0; i < opts.grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(opts.grid - 1);
    double dens = 0;
    for (double v : values) {
      if (opts.circular) {
        for (int s = -3; s <= 3; ++s) {
          const double z = (x - (v + 360.0 * s)) / h;
          dens += std::exp(-0.5 * z * z);
        }
      } else {
        const double z = (x - v) / h;
        dens += std::exp(-0.5 * z * z);
      }
    }
    out.emplace_back(x, dens * norm);
  }
  return out;
}

std::vector<MaxLevPoint> max_leverage_by_vuln_count(const Corpus& corpus) {
  std::map<std::string, MaxLevPoint> by_ga;
  for (const auto& inst : corpus.instances) {
    if (!inst.own_loc || *inst.own_loc <= 0) continue;
    const std::string ga = inst.id.coord.ga();
    auto [it, inserted] = by_ga.try_emplace(ga);
    if (inserted) it->second.ga = ga;
    const double lev = static_cast<double>(inst.dep_loc) /
                       static_cast<double>(*inst.own_loc);
    it->second.max_lambda_dir = std::max(it->second.max_lambda_dir, lev);
    it->second.vuln_count =
        std::max(it->second.vuln_count, inst.own_vulns + inst.dep_vulns);
  }
  std::vector<MaxLevPoint> out;
  out.reserve(by_ga.size());
  for (auto& [ga, point] : by_ga) out.push_back(std::move(point));
  return out;
}

} // namespace techlev
