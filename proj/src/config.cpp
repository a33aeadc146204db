#include "techlev/config.hpp"

#include "techlev/csvio.hpp"
#include "techlev/errors.hpp"

#include <json.hpp>

#include <cstdlib>

namespace techlev {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

const char* env_get(const char* name) { return std::getenv(name); }

template <typename T>
T parse_number(const std::string& text, const char* name) {
  try {
    std::size_t used = 0;
    if constexpr (std::is_floating_point_v<T>) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
      return static_cast<T>(v);
    } else {
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
      return static_cast<T>(v);
    }
  } catch (const std::exception&) {
    throw ConfigError(std::string(name) + " is not a valid number: \"" + text + "\"");
  }
}

bool parse_bool(const std::string& text, const char* name) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  throw ConfigError(std::string(name) + " is not a boolean: \"" + text + "\"");
}

} // namespace

ToolConfig load_config(const std::filesystem::path& path) {
  ToolConfig c;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config " + path.string() + " must be a JSON object");

  const std::filesystem::path base =
      path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

  try {
    if (j.contains("manifest_path"))
      c.manifest_path = resolve(base, j["manifest_path"].get<std::string>());
    if (j.contains("vuln_db_path"))
      c.vuln_db_path = resolve(base, j["vuln_db_path"].get<std::string>());
    if (j.contains("output_dir"))
      c.output_dir = resolve(base, j["output_dir"].get<std::string>());
    if (j.contains("cache_dir"))
      c.cache_dir = resolve(base, j["cache_dir"].get<std::string>());
    if (j.contains("remote_repo_url") && !j["remote_repo_url"].is_null())
      c.remote_repo_url = j["remote_repo_url"].get<std::string>();
    if (j.contains("loc_filter_min")) c.loc_filter_min = j["loc_filter_min"].get<std::int64_t>();
    if (j.contains("size_class_threshold"))
      c.size_class_threshold = j["size_class_threshold"].get<std::int64_t>();
    if (j.contains("lambda_thresholds")) {
      const auto& t = j["lambda_thresholds"];
      if (t.contains("small")) c.lambda_small = t["small"].get<double>();
      if (t.contains("large")) c.lambda_large = t["large"].get<double>();
    }
    if (j.contains("l_std")) c.l_std = j["l_std"].get<std::int64_t>();
    if (j.contains("transitive_mode")) c.transitive_mode = j["transitive_mode"].get<bool>();
    if (j.contains("branch_key_tokens"))
      c.branch_key_tokens = j["branch_key_tokens"].get<int>();
    if (j.contains("per_file_loc")) c.per_file_loc = j["per_file_loc"].get<bool>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    if (j.contains("kde")) {
      const auto& k = j["kde"];
      if (k.contains("bandwidth") && !k["bandwidth"].is_null())
        c.kde.bandwidth = k["bandwidth"].get<double>();
      if (k.contains("grid")) c.kde.grid = k["grid"].get<int>();
      if (k.contains("circular")) c.kde.circular = k["circular"].get<bool>();
    }
    if (j.contains("language_profile")) {
      const auto& p = j["language_profile"];
      LanguageProfile profile;
      for (const auto& e : p.at("code_extensions"))
        profile.code_extensions.push_back(e.get<std::string>());
      for (const auto& e : p.at("line_comment_prefixes"))
        profile.line_comment_prefixes.push_back(e.get<std::string>());
      for (const auto& d : p.at("block_comment_delimiters")) {
        profile.block_comment_delimiters.emplace_back(d.at(0).get<std::string>(),
                                                      d.at(1).get<std::string>());
      }
      c.language_profile = std::move(profile);
    }
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }

  apply_env_overrides(c);
  validate_config(c);
  return c;
}

void apply_env_overrides(ToolConfig& c) {
  if (const char* v = env_get("TECHLEV_MANIFEST_PATH")) c.manifest_path = v;
  if (const char* v = env_get("TECHLEV_VULN_DB_PATH")) c.vuln_db_path = v;
  if (const char* v = env_get("TECHLEV_OUTPUT_DIR")) c.output_dir = v;
  if (const char* v = env_get("TECHLEV_CACHE_DIR")) c.cache_dir = v;
  if (const char* v = env_get("TECHLEV_REMOTE_REPO_URL")) c.remote_repo_url = v;
  if (const char* v = env_get("TECHLEV_LOC_FILTER_MIN"))
    c.loc_filter_min = parse_number<std::int64_t>(v, "TECHLEV_LOC_FILTER_MIN");
  if (const char* v = env_get("TECHLEV_SIZE_CLASS_THRESHOLD"))
    c.size_class_threshold = parse_number<std::int64_t>(v, "TECHLEV_SIZE_CLASS_THRESHOLD");
  if (const char* v = env_get("TECHLEV_LAMBDA_SMALL"))
    c.lambda_small = parse_number<double>(v, "TECHLEV_LAMBDA_SMALL");
  if (const char* v = env_get("TECHLEV_LAMBDA_LARGE"))
    c.lambda_large = parse_number<double>(v, "TECHLEV_LAMBDA_LARGE");
  if (const char* v = env_get("TECHLEV_L_STD"))
    c.l_std = parse_number<std::int64_t>(v, "TECHLEV_L_STD");
  if (const char* v = env_get("TECHLEV_TRANSITIVE_MODE"))
    c.transitive_mode = parse_bool(v, "TECHLEV_TRANSITIVE_MODE");
  if (const char* v = env_get("TECHLEV_BRANCH_KEY_TOKENS"))
    c.branch_key_tokens = parse_number<int>(v, "TECHLEV_BRANCH_KEY_TOKENS");
  if (const char* v = env_get("TECHLEV_PER_FILE_LOC"))
    c.per_file_loc = parse_bool(v, "TECHLEV_PER_FILE_LOC");
  if (const char* v = env_get("TECHLEV_JOBS")) c.jobs = parse_number<int>(v, "TECHLEV_JOBS");
  if (const char* v = env_get("TECHLEV_KDE_BANDWIDTH"))
    c.kde.bandwidth = parse_number<double>(v, "TECHLEV_KDE_BANDWIDTH");
  if (const char* v = env_get("TECHLEV_KDE_GRID"))
    c.kde.grid = parse_number<int>(v, "TECHLEV_KDE_GRID");
  if (const char* v = env_get("TECHLEV_KDE_CIRCULAR"))
    c.kde.circular = parse_bool(v, "TECHLEV_KDE_CIRCULAR");
}

void validate_config(const ToolConfig& c) {
  if (c.manifest_path.empty()) throw ConfigError("manifest_path is required");
  if (!std::filesystem::is_regular_file(c.manifest_path)) {
    throw ConfigError("manifest_path does not exist: " + c.manifest_path.string());
  }
  if (!c.vuln_db_path.empty() && !std::filesystem::is_regular_file(c.vuln_db_path)) {
    throw ConfigError("vuln_db_path does not exist: " + c.vuln_db_path.string());
  }
  if (c.loc_filter_min < 0) throw ConfigError("loc_filter_min must be >= 0");
  if (c.size_class_threshold <= 0) throw ConfigError("size_class_threshold must be positive");
  if (c.lambda_small <= 0 || c.lambda_large <= 0) {
    throw ConfigError("lambda thresholds must be positive");
  }
  if (c.l_std < 0) throw ConfigError("l_std must be >= 0");
  if (c.branch_key_tokens < 1) throw ConfigError("branch_key_tokens must be >= 1");
  if (c.kde.grid < 2) throw ConfigError("kde grid must be >= 2");
  if (c.kde.bandwidth && *c.kde.bandwidth <= 0) {
    throw ConfigError("kde bandwidth must be positive");
  }
  if (c.jobs < 0) throw ConfigError("jobs must be >= 0");
  if (c.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (c.language_profile.code_extensions.empty()) {
    throw ConfigError("language_profile needs at least one extension");
  }
  for (const auto& [open, close] : c.language_profile.block_comment_delimiters) {
    if (open.empty() || close.empty()) {
      throw ConfigError("block comment delimiters must be non-empty");
    }
  }
}

} // namespace techlev
