#pragma once

#include "techlev/loc.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace techlev {

struct KdeConfig {
  std::optional<double> bandwidth;
  int grid = 360;
  bool circular = false;
};

struct ToolConfig {
  std::filesystem::path manifest_path;
  std::filesystem::path vuln_db_path; // optional: empty means no database
  LanguageProfile language_profile = java_profile();
  std::int64_t loc_filter_min = 100;
  std::int64_t size_class_threshold = 100000;
  double lambda_small = 4.0;   // exposure cutoff, small-medium class
  double lambda_large = 0.125; // exposure cutoff, large class
  std::filesystem::path output_dir = "out";
  std::filesystem::path cache_dir = ".techlev-cache";
  std::optional<std::string> remote_repo_url;
  std::int64_t l_std = 0;       // standard-library lines added to the numerator
  bool transitive_mode = false; // include deduplicated transitive sizes
  int branch_key_tokens = 1;    // version tokens forming a branch key
  KdeConfig kde;
  bool per_file_loc = false;
  int jobs = 1;

  // runtime flags, not read from the file
  bool deterministic = false;
};

// precedence: defaults < file < TECHLEV_* environment < command line.
// relative paths in the file resolve against the file's directory;
// environment paths resolve against the working directory.
ToolConfig load_config(const std::filesystem::path& path);

void apply_env_overrides(ToolConfig& config);
void validate_config(const ToolConfig& config);

} // namespace techlev
