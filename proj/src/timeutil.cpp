#include "techlev/timeutil.hpp"

#include "techlev/errors.hpp"

#include <cctype>
#include <cstdio>

namespace techlev {

namespace {

bool read_int(const std::string& s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

[[noreturn]] void bad_timestamp(const std::string& text) {
  throw ParseError("invalid UTC timestamp \"" + text +
                   "\" (expected YYYY-MM-DD[THH:MM[:SS]][Z])");
}

} // namespace

UtcTime parse_utc(const std::string& text) {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!read_int(text, 0, 4, year) || text.size() < 10 || text[4] != '-' ||
      !read_int(text, 5, 2, month) || text[7] != '-' || !read_int(text, 8, 2, day)) {
    bad_timestamp(text);
  }
  std::size_t pos = 10;
  if (pos < text.size() && text[pos] == 'T') {
    if (!read_int(text, pos + 1, 2, hour) || pos + 3 >= text.size() ||
        text[pos + 3] != ':' || !read_int(text, pos + 4, 2, minute)) {
      bad_timestamp(text);
    }
    pos += 6;
    if (pos < text.size() && text[pos] == ':') {
      if (!read_int(text, pos + 1, 2, second)) bad_timestamp(text);
      pos += 3;
    }
  }
  if (pos < text.size() && text[pos] == 'Z') ++pos;
  if (pos != text.size()) bad_timestamp(text);

  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) bad_timestamp(text);

  const std::chrono::sys_days days{ymd};
  return UtcTime{days.time_since_epoch() + std::chrono::hours{hour} +
                 std::chrono::minutes{minute} + std::chrono::seconds{second}};
}

std::string format_utc(UtcTime t) {
  const auto days = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{days};
  auto rest = std::chrono::duration_cast<std::chrono::seconds>(t - days).count();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(rest / 3600),
                static_cast<int>((rest % 3600) / 60), static_cast<int>(rest % 60));
  return buf;
}

long long days_between(UtcTime from, UtcTime to) {
  const auto elapsed = (to - from).count();
  const long long day = 24 * 3600;
  if (elapsed >= 0) return elapsed / day;
  return -((-elapsed + day - 1) / day);
}

} // namespace techlev
