#pragma once

#include <chrono>
#include <string>

namespace techlev {

// All corpus timestamps are UTC instants with second resolution.
using UtcTime = std::chrono::sys_seconds;

// Parses "YYYY-MM-DD", "YYYY-MM-DDTHH:MM" or "YYYY-MM-DDTHH:MM:SS", with an
// optional trailing 'Z'. Anything else (offsets, fractional seconds) is
// rejected with a ParseError.
UtcTime parse_utc(const std::string& text);

// Canonical form "YYYY-MM-DDTHH:MM:SSZ".
std::string format_utc(UtcTime t);

// Whole days from `from` to `to`: floor of the elapsed time over 24h.
long long days_between(UtcTime from, UtcTime to);

} // namespace techlev
