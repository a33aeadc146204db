#include "techlev/config.hpp"
#include "techlev/errors.hpp"
#include "techlev/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <string>

namespace {

void print_stats_error_json(const techlev::StatsError& e) {
  if (!e.detail_json().empty()) {
    std::printf("%s\n", e.detail_json().c_str());
    return;
  }
  nlohmann::ordered_json j;
  j["error"] = "statistics";
  j["message"] = e.what();
  std::printf("%s\n", j.dump().c_str());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"technical leverage analytics over versioned library corpora"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  bool deterministic = false;
  int jobs = -1;
  app.add_option("--config", config_path, "configuration file (JSON)")
      ->required()
      ->envname("TECHLEV_CONFIG");
  app.add_option("--output", output_override, "output directory (overrides config)");
  app.add_flag("--deterministic", deterministic,
               "suppress timestamps so reruns are byte-identical");
  app.add_option("--jobs", jobs, "worker threads for source measurement");

  auto* measure = app.add_subcommand("measure", "load the corpus, count sizes, "
                                                "write instances.csv/exclusions.csv");
  auto* analyze = app.add_subcommand(
      "analyze", "split release chains and write chains.csv/changes.csv/summary.json");
  auto* stats = app.add_subcommand("stats", "statistical reports over changes.csv");
  std::string which = "all";
  stats->add_option("which", which, "regress|odds|kde|correlation|payoff|all");
  auto* plot = app.add_subcommand("plot", "SVG figures plus their data CSVs");
  std::string kind = "all";
  plot->add_option("kind", kind, "kde_theta|leverage_scatter|max_lev_vulns|all");
  auto* all = app.add_subcommand("all", "measure, analyze, stats, plot in sequence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    techlev::ToolConfig config = techlev::load_config(config_path);
    if (!output_override.empty()) config.output_dir = output_override;
    if (jobs >= 0) config.jobs = jobs;
    config.deterministic = deterministic;

    if (measure->parsed()) {
      techlev::run_measure(config);
    } else if (analyze->parsed()) {
      techlev::run_analyze(config);
    } else if (stats->parsed()) {
      techlev::run_stats(config, which);
    } else if (plot->parsed()) {
      techlev::run_plot(config, kind);
    } else if (all->parsed()) {
      techlev::run_all(config);
    }
    return 0;
  } catch (const techlev::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const techlev::StatsError& e) {
    print_stats_error_json(e);
    std::fprintf(stderr, "statistics error: %s\n", e.what());
    return 4;
  } catch (const techlev::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
}
