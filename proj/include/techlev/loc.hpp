#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace techlev {

struct LanguageProfile {
  std::vector<std::string> code_extensions; // with leading dot, e.g. ".java"
  std::vector<std::string> line_comment_prefixes;
  std::vector<std::pair<std::string, std::string>> block_comment_delimiters;
};

LanguageProfile java_profile();

// lines with at least one non-whitespace character outside comments.
// a line-comment prefix wins over a block-open at the same position, the
// first close delimiter ends a block (no nesting), and string literals get
// no special treatment.
std::int64_t count_loc_text(std::string_view text, const LanguageProfile& profile);

struct FileLoc {
  std::string path; // relative to the tree root, generic separators
  std::int64_t loc = 0;
};

std::int64_t count_file_loc(const std::filesystem::path& file,
                            const LanguageProfile& profile);

// deterministic: files sorted by relative path before counting; symlinks
// are not followed
std::int64_t count_library_loc(const std::filesystem::path& root,
                               const LanguageProfile& profile,
                               std::vector<FileLoc>* per_file = nullptr);

} // namespace techlev
