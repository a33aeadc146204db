#include "techlev/loc.hpp"

#include "techlev/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace techlev {

LanguageProfile java_profile() {
  return LanguageProfile{{".java"}, {"//"}, {{"/*", "*/"}}};
}

namespace {

bool starts_at(std::string_view text, std::size_t pos, const std::string& token) {
  return !token.empty() && text.compare(pos, token.size(), token) == 0;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

} // namespace

std::int64_t count_loc_text(std::string_view text, const LanguageProfile& profile) {
  std::int64_t count = 0;
  int block = -1; // index into block_comment_delimiters, -1 when outside
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(line_start, line_end - line_start);

    bool significant = false;
    std::size_t i = 0;
    while (i < line.size()) {
      if (block >= 0) {
        const auto& close = profile.block_comment_delimiters[block].second;
        if (starts_at(line, i, close)) {
          block = -1;
          i += close.size();
        } else {
          ++i;
        }
        continue;
      }
      bool matched = false;
      for (const auto& prefix : profile.line_comment_prefixes) {
        if (starts_at(line, i, prefix)) {
          matched = true;
          break;
        }
      }
      if (matched) break; // rest of the line is comment
      for (std::size_t d = 0; d < profile.block_comment_delimiters.size(); ++d) {
        const auto& open = profile.block_comment_delimiters[d].first;
        if (starts_at(line, i, open)) {
          block = static_cast<int>(d);
          i += open.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (!is_space(line[i])) significant = true;
      ++i;
    }
    if (significant) ++count;

    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return count;
}

namespace {

std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot read source file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

std::int64_t count_file_loc(const std::filesystem::path& file,
                            const LanguageProfile& profile) {
  return count_loc_text(slurp(file), profile);
}

std::int64_t count_library_loc(const std::filesystem::path& root,
                               const LanguageProfile& profile,
                               std::vector<FileLoc>* per_file) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw DataError("source tree not found: " + root.string());
  }

  std::vector<std::pair<std::string, fs::path>> keyed;
  fs::recursive_directory_iterator it(root, fs::directory_options::none, ec), end;
  if (ec) throw DataError("cannot walk source tree " + root.string() + ": " + ec.message());
  for (; it != end; it.increment(ec)) {
    if (ec) throw DataError("cannot walk source tree " + root.string() + ": " + ec.message());
    if (it->is_symlink() || !it->is_regular_file()) continue;
    const std::string ext = it->path().extension().string();
    if (std::find(profile.code_extensions.begin(), profile.code_extensions.end(),
                  ext) != profile.code_extensions.end()) {
      keyed.emplace_back(fs::relative(it->path(), root).generic_string(), it->path());
    }
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::int64_t total = 0;
  for (const auto& [rel, path] : keyed) {
    const std::int64_t n = count_loc_text(slurp(path), profile);
    total += n;
    if (per_file) per_file->push_back(FileLoc{rel, n});
  }
  return total;
}

} // namespace techlev
