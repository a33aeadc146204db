#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace techlev {

// quotes a field iff it contains a comma, quote, or newline
std::string csv_escape(const std::string& field);

// shortest round-trip representation (to_chars); "-0" never produced
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);

// temp file in the target directory, then rename over the destination
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// RFC-4180-ish: quoted fields, doubled quotes, CRLF tolerated
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

} // namespace techlev
