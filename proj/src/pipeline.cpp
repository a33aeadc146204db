#include "techlev/pipeline.hpp"

#include "techlev/chains.hpp"
#include "techlev/csvio.hpp"
#include "techlev/errors.hpp"
#include "techlev/ingest.hpp"
#include "techlev/mathutil.hpp"
#include "techlev/metrics.hpp"
#include "techlev/stats.hpp"
#include "techlev/svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace techlev {

namespace {

using ordered_json = nlohmann::ordered_json;

// ---- shared parsing helpers ------------------------------------------------

double parse_double_field(const std::string& text, const char* what) {
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw DataError(std::string("bad numeric field for ") + what + ": \"" + text + "\"");
  }
  return v;
}

std::int64_t parse_int_field(const std::string& text, const char* what) {
  std::int64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw DataError(std::string("bad integer field for ") + what + ": \"" + text + "\"");
  }
  return v;
}

std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path,
                                                 const std::string& expected_header,
                                                 const char* producer) {
  if (!std::filesystem::is_regular_file(path)) {
    throw DataError(path.string() + " is missing; run \"" + producer + "\" first");
  }
  auto rows = parse_csv(read_file(path));
  if (rows.empty()) throw DataError(path.string() + " is empty");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    if (i) header += ',';
    header += rows[0][i];
  }
  if (header != expected_header) {
    throw DataError(path.string() + " has unexpected header \"" + header + "\"");
  }
  rows.erase(rows.begin());
  return rows;
}

// ---- instances.csv ----------------------------------------------------------

const char* kInstancesHeader = "gav,released,own_loc,dep_loc,own_vulns,dep_vulns";

std::vector<LibraryInstance> read_instances(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw DataError(path.string() + " is missing; run \"measure\" first");
  }
  auto rows = parse_csv(read_file(path));
  if (rows.empty()) throw DataError(path.string() + " is empty");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    if (i) header += ',';
    header += rows[0][i];
  }
  const std::string base = kInstancesHeader;
  const bool with_trans = header == base + ",trans_loc";
  if (header != base && !with_trans) {
    throw DataError(path.string() + " has unexpected header \"" + header + "\"");
  }
  rows.erase(rows.begin());

  std::vector<LibraryInstance> out;
  for (const auto& row : rows) {
    if (row.size() != (with_trans ? 7u : 6u)) {
      throw DataError("malformed row in " + path.string());
    }
    LibraryInstance inst;
    inst.id = parse_versioned_coordinate(row[0]);
    inst.released = parse_utc(row[1]);
    inst.own_loc = parse_int_field(row[2], "own_loc");
    inst.dep_loc = parse_int_field(row[3], "dep_loc");
    inst.own_vulns = parse_int_field(row[4], "own_vulns");
    inst.dep_vulns = parse_int_field(row[5], "dep_vulns");
    if (with_trans) inst.trans_loc = parse_int_field(row[6], "trans_loc");
    out.push_back(std::move(inst));
  }
  return out;
}

// ---- changes.csv ------------------------------------------------------------

const char* kChangesHeader =
    "chain_id,gav,delta_dep,delta_own,rho,theta,lambda_dir,rel_interval,"
    "rel_interval_prev,size_class,is_vuln,own_loc,dep_loc";

SizeClass parse_size_class(const std::string& text) {
  if (text == "small_medium") return SizeClass::small_medium;
  if (text == "large") return SizeClass::large;
  throw DataError("unknown size class \"" + text + "\"");
}

std::vector<ChangeRecord> read_changes(const std::filesystem::path& path) {
  std::vector<ChangeRecord> out;
  for (const auto& row : read_table(path, kChangesHeader, "analyze")) {
    if (row.size() != 13) throw DataError("malformed row in " + path.string());
    ChangeRecord rec;
    rec.chain_id = row[0];
    rec.gav_to = parse_versioned_coordinate(row[1]);
    rec.delta_dep = parse_int_field(row[2], "delta_dep");
    rec.delta_own = parse_int_field(row[3], "delta_own");
    rec.rho = parse_double_field(row[4], "rho");
    rec.theta = parse_double_field(row[5], "theta");
    rec.lambda_dir = parse_double_field(row[6], "lambda_dir");
    rec.rel_interval = parse_int_field(row[7], "rel_interval");
    if (!row[8].empty()) rec.rel_interval_prev = parse_int_field(row[8], "rel_interval_prev");
    rec.size_class = parse_size_class(row[9]);
    rec.is_vuln = parse_int_field(row[10], "is_vuln") != 0;
    rec.own_loc = parse_int_field(row[11], "own_loc");
    rec.dep_loc = parse_int_field(row[12], "dep_loc");
    out.push_back(std::move(rec));
  }
  return out;
}

// ---- small output helpers ---------------------------------------------------

std::string int_or_empty(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

ordered_json summary_block(const std::vector<double>& values) {
  if (values.empty()) return nullptr;
  const SampleSummary s = summarize(values);
  ordered_json j;
  j["mean"] = s.mean;
  j["median"] = s.median;
  j["stdev"] = s.stdev;
  j["min"] = s.min;
  j["max"] = s.max;
  j["q25"] = s.q25;
  j["q75"] = s.q75;
  return j;
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  atomic_write_file(path, j.dump(2) + "\n");
}

constexpr double kPayoffLevels[] = {1, 2, 4, 8, 16};

struct ClassSplit {
  std::vector<ChangeRecord> small_medium;
  std::vector<ChangeRecord> large;
};

ClassSplit split_by_class(const std::vector<ChangeRecord>& records) {
  ClassSplit s;
  for (const auto& r : records) {
    (r.size_class == SizeClass::small_medium ? s.small_medium : s.large).push_back(r);
  }
  return s;
}

ordered_json regression_json(const RegressionResult& r, const RegressionDataset& d,
                             SizeClass cls) {
  ordered_json j;
  j["size_class"] = size_class_name(cls);
  j["n"] = r.n;
  j["excluded"] = {{"missing_prev", d.excluded_missing_prev},
                   {"lambda_zero", d.excluded_lambda_zero},
                   {"rho_zero", d.excluded_rho_zero},
                   {"total", d.excluded_total}};
  ordered_json coefs = ordered_json::array();
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    coefs.push_back({{"name", r.names[i]},
                     {"estimate", r.estimates[i]},
                     {"std_error", r.std_errors[i]},
                     {"t_stat", r.t_stats[i]},
                     {"p_value", r.p_values[i]}});
  }
  j["coefficients"] = std::move(coefs);
  j["r_squared"] = r.r_squared;
  j["adj_r_squared"] = r.adj_r_squared;
  j["rmse"] = r.rmse;
  return j;
}

std::string regression_text(const RegressionResult& r) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-24s %14s %14s %10s %12s\n", "coefficient",
                "estimate", "std.err", "tStat", "p-value");
  out << buf;
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%-24s %14.6g %14.6g %10.4g %12.4g\n",
                  r.names[i].c_str(), r.estimates[i], r.std_errors[i], r.t_stats[i],
                  r.p_values[i]);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "\nn = %zu   R^2 = %.6g   adj R^2 = %.6g   RMSE = %.6g\n", r.n,
                r.r_squared, r.adj_r_squared, r.rmse);
  out << buf;
  return out.str();
}

struct ClassRegression {
  RegressionDataset dataset;
  RegressionResult result;
};

ClassRegression fit_class(const std::vector<ChangeRecord>& records, SizeClass cls) {
  ClassRegression cr;
  cr.dataset = build_regression_dataset(records, cls);
  cr.result = ols_fit(cr.dataset);
  return cr;
}

// ---- stats subcommands -------------------------------------------------------

void stats_regress(const ToolConfig& config, const std::vector<ChangeRecord>& records) {
  for (const SizeClass cls : {SizeClass::small_medium, SizeClass::large}) {
    const ClassRegression cr = fit_class(records, cls);
    const std::string stem = std::string("regression_") + size_class_name(cls);
    write_json(config.output_dir / (stem + ".json"),
               regression_json(cr.result, cr.dataset, cls));
    atomic_write_file(config.output_dir / (stem + ".txt"), regression_text(cr.result));
  }
}

void stats_odds(const ToolConfig& config, const std::vector<ChangeRecord>& records) {
  ordered_json j;
  std::ostringstream text;
  for (const SizeClass cls : {SizeClass::small_medium, SizeClass::large}) {
    const double threshold =
        cls == SizeClass::small_medium ? config.lambda_small : config.lambda_large;
    const ContingencyTable t = contingency(records, threshold, cls);
    const OddsResult r = odds_analysis(t);
    ordered_json block;
    block["threshold"] = threshold;
    block["table"] = {{"exposed_vuln", t.exposed_vuln},
                      {"exposed_safe", t.exposed_safe},
                      {"unexposed_vuln", t.unexposed_vuln},
                      {"unexposed_safe", t.unexposed_safe}};
    block["odds_ratio"] = r.odds_ratio;
    block["ci_low"] = r.ci_low;
    block["ci_high"] = r.ci_high;
    block["fisher_p"] = r.fisher_p;
    j[size_class_name(cls)] = std::move(block);

    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "%-14s threshold %-8g cells [%lld %lld; %lld %lld]  OR %.4g  "
                  "CI [%.4g, %.4g]  fisher p %.4g\n",
                  size_class_name(cls), threshold,
                  static_cast<long long>(t.exposed_vuln),
                  static_cast<long long>(t.exposed_safe),
                  static_cast<long long>(t.unexposed_vuln),
                  static_cast<long long>(t.unexposed_safe), r.odds_ratio, r.ci_low,
                  r.ci_high, r.fisher_p);
    text << buf;
  }
  write_json(config.output_dir / "odds.json", j);
  atomic_write_file(config.output_dir / "odds.txt", text.str());
}

void stats_kde(const ToolConfig& config, const ClassSplit& split) {
  KdeOptions opts;
  opts.bandwidth = config.kde.bandwidth;
  opts.grid = config.kde.grid;
  opts.circular = config.kde.circular;
  const std::pair<const std::vector<ChangeRecord>*, SizeClass> classes[] = {
      {&split.small_medium, SizeClass::small_medium}, {&split.large, SizeClass::large}};
  for (const auto& [records, cls] : classes) {
    std::vector<double> thetas;
    thetas.reserve(records->size());
    for (const auto& r : *records) thetas.push_back(r.theta);
    if (thetas.empty()) {
      throw StatsError(std::string("no angles for size class ") + size_class_name(cls),
                       "{\"error\":\"empty_class\"}");
    }
    const auto series = kde_theta(thetas, opts);
    std::string csv = "angle,density\n";
    for (const auto& [angle, density] : series) {
      csv += format_double(angle) + "," + format_double(density) + "\n";
    }
    atomic_write_file(config.output_dir /
                          (std::string("kde_") + size_class_name(cls) + ".csv"),
                      csv);
  }
}

void stats_correlation(const ToolConfig& config,
                       const std::vector<LibraryInstance>& instances) {
  std::vector<double> lambdas, own_sizes;
  std::size_t excluded = 0;
  for (const auto& inst : instances) {
    const double lev = direct_leverage(inst.dep_loc, *inst.own_loc);
    if (lev <= 0) {
      ++excluded;
      continue;
    }
    lambdas.push_back(lev);
    own_sizes.push_back(static_cast<double>(*inst.own_loc));
  }
  if (lambdas.size() < 3) {
    throw StatsError("correlation needs at least 3 instances with positive leverage",
                     "{\"error\":\"too_few_points\"}");
  }
  const Correlation c = pearson_log(lambdas, own_sizes);
  ordered_json j;
  j["r"] = c.r;
  j["p_value"] = c.p_value;
  j["n"] = c.n;
  j["excluded_zero_lambda"] = excluded;
  write_json(config.output_dir / "correlation.json", j);
}

void stats_payoff(const ToolConfig& config, const std::vector<ChangeRecord>& records) {
  ordered_json j;
  for (const SizeClass cls : {SizeClass::small_medium, SizeClass::large}) {
    const ClassRegression cr = fit_class(records, cls);
    double beta = 0;
    bool found = false;
    for (std::size_t i = 0; i < cr.result.names.size(); ++i) {
      if (cr.result.names[i] == "log_lambda_dir") {
        beta = cr.result.estimates[i];
        found = true;
      }
    }
    if (!found) throw StatsError("regression lacks a leverage coefficient");
    ordered_json block;
    block["beta"] = beta;
    ordered_json rows = ordered_json::array();
    for (double lev : kPayoffLevels) {
      rows.push_back({{"leverage", lev}, {"ratio", payoff_ratio(lev, beta)}});
    }
    block["rows"] = std::move(rows);
    j[size_class_name(cls)] = std::move(block);
  }
  write_json(config.output_dir / "payoff.json", j);
}

// ---- plot subcommands ----------------------------------------------------------

std::vector<std::pair<double, double>> read_series(const std::filesystem::path& path) {
  std::vector<std::pair<double, double>> out;
  for (const auto& row : read_table(path, "angle,density", "stats kde")) {
    if (row.size() != 2) throw DataError("malformed row in " + path.string());
    out.emplace_back(parse_double_field(row[0], "angle"),
                     parse_double_field(row[1], "density"));
  }
  return out;
}

void plot_kde_theta(const ToolConfig& config) {
  const auto small = read_series(config.output_dir / "kde_small_medium.csv");
  const auto large = read_series(config.output_dir / "kde_large.csv");

  std::string csv = "size_class,angle,density\n";
  for (const auto& [angle, density] : small) {
    csv += std::string("small_medium,") + format_double(angle) + "," +
           format_double(density) + "\n";
  }
  for (const auto& [angle, density] : large) {
    csv += std::string("large,") + format_double(angle) + "," + format_double(density) +
           "\n";
  }

  ChartSpec spec;
  spec.title = "Change direction density by size class";
  spec.x_label = "theta (degrees)";
  spec.y_label = "density";
  spec.series.push_back({"small_medium", small, true});
  spec.series.push_back({"large", large, true});
  const std::string svg = render_chart_svg(spec, config.deterministic);

  atomic_write_file(config.output_dir / "kde_theta.csv", csv);
  atomic_write_file(config.output_dir / "kde_theta.svg", svg);
}

void plot_leverage_scatter(const ToolConfig& config) {
  const auto instances = read_instances(config.output_dir / "instances.csv");
  Series small{"small_medium", {}, false}, large{"large", {}, false};
  std::string csv = "size_class,own_loc,lambda_dir\n";
  for (const auto& inst : instances) {
    const double lev = direct_leverage(inst.dep_loc, *inst.own_loc);
    if (lev <= 0) continue; // not representable on the log axis
    const SizeClass cls = classify_size(*inst.own_loc, config.size_class_threshold);
    auto& series = cls == SizeClass::small_medium ? small : large;
    series.points.emplace_back(static_cast<double>(*inst.own_loc), lev);
    csv += std::string(size_class_name(cls)) + "," + std::to_string(*inst.own_loc) +
           "," + format_double(lev) + "\n";
  }

  ChartSpec spec;
  spec.title = "Direct leverage vs own size";
  spec.x_label = "own size (LoC, log)";
  spec.y_label = "direct leverage (log)";
  spec.x_log = true;
  spec.y_log = true;
  spec.series.push_back(std::move(small));
  spec.series.push_back(std::move(large));
  const std::string svg = render_chart_svg(spec, config.deterministic);

  atomic_write_file(config.output_dir / "leverage_scatter.csv", csv);
  atomic_write_file(config.output_dir / "leverage_scatter.svg", svg);
}

void plot_max_lev_vulns(const ToolConfig& config) {
  Corpus corpus;
  corpus.instances = read_instances(config.output_dir / "instances.csv");
  const auto points = max_leverage_by_vuln_count(corpus);

  std::string csv = "ga,vuln_count,max_lambda_dir\n";
  Series series{"libraries", {}, false};
  for (const auto& p : points) {
    csv += csv_escape(p.ga) + "," + std::to_string(p.vuln_count) + "," +
           format_double(p.max_lambda_dir) + "\n";
    series.points.emplace_back(static_cast<double>(p.vuln_count), p.max_lambda_dir);
  }

  ChartSpec spec;
  spec.title = "Max direct leverage vs vulnerability count";
  spec.x_label = "vulnerabilities per library";
  spec.y_label = "max direct leverage (log)";
  spec.y_log = true;
  spec.series.push_back(std::move(series));
  const std::string svg = render_chart_svg(spec, config.deterministic);

  atomic_write_file(config.output_dir / "max_lev_vulns.csv", csv);
  atomic_write_file(config.output_dir / "max_lev_vulns.svg", svg);
}

} // namespace

// ---- stage entry points ----------------------------------------------------------

void run_measure(const ToolConfig& config) {
  LoadOptions options;
  options.profile = config.language_profile;
  options.loc_filter_min = config.loc_filter_min;
  options.transitive_mode = config.transitive_mode;
  options.jobs = config.jobs;
  options.per_file_loc = config.per_file_loc;

  LoadResult loaded = load_corpus(config.manifest_path, options);
  if (!config.vuln_db_path.empty()) {
    const VulnDb db = load_vuln_db(config.vuln_db_path);
    annotate_vulnerabilities(loaded.corpus, db);
  }

  std::string instances = kInstancesHeader;
  if (config.transitive_mode) instances += ",trans_loc";
  instances += "\n";
  for (const auto& inst : loaded.corpus.instances) {
    instances += csv_escape(inst.id.gav()) + "," + format_utc(inst.released) + "," +
                 std::to_string(*inst.own_loc) + "," + std::to_string(inst.dep_loc) +
                 "," + std::to_string(inst.own_vulns) + "," +
                 std::to_string(inst.dep_vulns);
    if (config.transitive_mode) instances += "," + std::to_string(inst.trans_loc);
    instances += "\n";
  }
  atomic_write_file(config.output_dir / "instances.csv", instances);

  std::string exclusions = "gav,reason,detail\n";
  for (const auto& e : loaded.exclusions) {
    exclusions += csv_escape(e.gav) + "," + csv_escape(e.reason) + "," +
                  csv_escape(e.detail) + "\n";
  }
  atomic_write_file(config.output_dir / "exclusions.csv", exclusions);

  if (config.per_file_loc) {
    std::string per_file = "gav,path,loc\n";
    for (const auto& dump : loaded.per_file) {
      for (const auto& f : dump.files) {
        per_file += csv_escape(dump.gav) + "," + csv_escape(f.path) + "," +
                    std::to_string(f.loc) + "\n";
      }
    }
    atomic_write_file(config.output_dir / "per_file_loc.csv", per_file);
  }
}

void run_analyze(const ToolConfig& config) {
  const auto instances = read_instances(config.output_dir / "instances.csv");
  if (instances.empty()) throw DataError("no release chains: the corpus is empty");

  std::map<std::string, std::vector<LibraryInstance>> by_ga;
  for (const auto& inst : instances) by_ga[inst.id.coord.ga()].push_back(inst);

  std::vector<ReleaseChain> chains;
  for (auto& [ga, group] : by_ga) {
    std::sort(group.begin(), group.end(), [](const auto& a, const auto& b) {
      if (a.released != b.released) return a.released < b.released;
      return compare_versions(a.id.version, b.id.version) == std::strong_ordering::less;
    });
    auto split = split_release_chains(std::move(group), config.branch_key_tokens);
    for (auto& chain : split) chains.push_back(std::move(chain));
  }

  std::string chains_csv = "chain_id,gav,released,rel_interval,rel_interval_prev\n";
  for (const auto& chain : chains) {
    for (std::size_t i = 0; i < chain.instances.size(); ++i) {
      std::string interval, prev;
      if (i > 0) interval = std::to_string(chain.intervals[i - 1]);
      if (i > 1) prev = std::to_string(chain.intervals[i - 2]);
      chains_csv += csv_escape(chain.chain_id) + "," +
                    csv_escape(chain.instances[i].id.gav()) + "," +
                    format_utc(chain.instances[i].released) + "," + interval + "," +
                    prev + "\n";
    }
  }
  atomic_write_file(config.output_dir / "chains.csv", chains_csv);

  const auto records = build_change_records(chains, config.size_class_threshold);
  std::string changes_csv = std::string(kChangesHeader) + "\n";
  for (const auto& rec : records) {
    changes_csv += csv_escape(rec.chain_id) + "," + csv_escape(rec.gav_to.gav()) + "," +
                   std::to_string(rec.delta_dep) + "," + std::to_string(rec.delta_own) +
                   "," + format_double(rec.rho) + "," + format_double(rec.theta) + "," +
                   format_double(rec.lambda_dir) + "," +
                   std::to_string(rec.rel_interval) + "," +
                   int_or_empty(rec.rel_interval_prev) + "," +
                   size_class_name(rec.size_class) + "," + (rec.is_vuln ? "1" : "0") +
                   "," + std::to_string(rec.own_loc) + "," +
                   std::to_string(rec.dep_loc) + "\n";
  }
  atomic_write_file(config.output_dir / "changes.csv", changes_csv);

  const ClassSplit split = split_by_class(records);
  ordered_json summary;
  const std::pair<const std::vector<ChangeRecord>*, const char*> classes[] = {
      {&split.small_medium, "small_medium"}, {&split.large, "large"}};
  for (const auto& [class_records, name] : classes) {
    std::vector<double> lambda, rho, theta;
    for (const auto& r : *class_records) {
      lambda.push_back(r.lambda_dir);
      rho.push_back(r.rho);
      theta.push_back(r.theta);
    }
    ordered_json block;
    block["n"] = class_records->size();
    block["lambda_dir"] = summary_block(lambda);
    block["rho"] = summary_block(rho);
    block["theta"] = summary_block(theta);
    summary[name] = std::move(block);
  }
  write_json(config.output_dir / "summary.json", summary);
}

void run_stats(const ToolConfig& config, const std::string& which) {
  const auto records = read_changes(config.output_dir / "changes.csv");
  const ClassSplit split = split_by_class(records);

  const bool all = which == "all";
  bool handled = false;
  if (all || which == "regress") {
    stats_regress(config, records);
    handled = true;
  }
  if (all || which == "odds") {
    stats_odds(config, records);
    handled = true;
  }
  if (all || which == "kde") {
    stats_kde(config, split);
    handled = true;
  }
  if (all || which == "correlation") {
    stats_correlation(config, read_instances(config.output_dir / "instances.csv"));
    handled = true;
  }
  if (all || which == "payoff") {
    stats_payoff(config, records);
    handled = true;
  }
  if (!handled) {
    throw ConfigError("unknown stats selection \"" + which +
                      "\" (regress|odds|kde|correlation|payoff|all)");
  }
}

void run_plot(const ToolConfig& config, const std::string& kind) {
  const bool all = kind == "all";
  bool handled = false;
  if (all || kind == "kde_theta") {
    plot_kde_theta(config);
    handled = true;
  }
  if (all || kind == "leverage_scatter") {
    plot_leverage_scatter(config);
    handled = true;
  }
  if (all || kind == "max_lev_vulns") {
    plot_max_lev_vulns(config);
    handled = true;
  }
  if (!handled) {
    throw ConfigError("unknown plot kind \"" + kind +
                      "\" (kde_theta|leverage_scatter|max_lev_vulns|all)");
  }
}

void run_all(const ToolConfig& config) {
  run_measure(config);
  run_analyze(config);
  run_stats(config, "all");
  run_plot(config, "all");
}

} // namespace techlev
