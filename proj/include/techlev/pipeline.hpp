#pragma once

#include "techlev/config.hpp"

#include <string>

namespace techlev {

// stages communicate through files in config.output_dir; each stage reads
// its predecessor's CSVs, so the written schemas are the real interface

void run_measure(const ToolConfig& config);
void run_analyze(const ToolConfig& config);

// which: regress | odds | kde | correlation | payoff | all
void run_stats(const ToolConfig& config, const std::string& which);

// kind: kde_theta | leverage_scatter | max_lev_vulns | all
void run_plot(const ToolConfig& config, const std::string& kind);

void run_all(const ToolConfig& config);

} // namespace techlev
