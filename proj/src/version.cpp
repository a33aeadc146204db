#include "techlev/version.hpp"

#include "techlev/errors.hpp"

#include <algorithm>
#include <cctype>

namespace techlev {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

VersionToken make_token(const std::string& raw) {
  if (!raw.empty() && std::all_of(raw.begin(), raw.end(), is_digit)) {
    // clamp absurd lengths rather than overflow
    std::uint64_t v = 0;
    for (char c : raw) {
      if (v > (UINT64_MAX - 9) / 10) return VersionToken{UINT64_MAX};
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return VersionToken{v};
  }
  std::string low = raw;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return VersionToken{low};
}

} // namespace

std::vector<VersionToken> tokenize_version(const std::string& text) {
  std::vector<VersionToken> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(make_token(cur));
      cur.clear();
    }
  };
  for (char c : text) {
    if (!is_digit(c) && !is_alpha(c)) {
      flush(); // '.', '-', '_' and any other punctuation all separate
      continue;
    }
    if (!cur.empty()) {
      const bool was_digit = is_digit(cur.back());
      if (was_digit != is_digit(c)) flush(); // 1a -> 1, a
    }
    cur.push_back(c);
  }
  flush();
  return out;
}

Version Version::parse(const std::string& text) {
  Version v;
  v.text = text;
  v.tokens = tokenize_version(text);
  if (v.tokens.empty()) throw ParseError("empty version string \"" + text + "\"");
  return v;
}

std::strong_ordering compare_versions(const Version& a, const Version& b) {
  const std::size_t n = std::max(a.tokens.size(), b.tokens.size());
  static const VersionToken zero{std::uint64_t{0}};
  for (std::size_t i = 0; i < n; ++i) {
    const VersionToken& ta = i < a.tokens.size() ? a.tokens[i] : zero;
    const VersionToken& tb = i < b.tokens.size() ? b.tokens[i] : zero;
    const bool na = std::holds_alternative<std::uint64_t>(ta);
    const bool nb = std::holds_alternative<std::uint64_t>(tb);
    if (na && nb) {
      const auto va = std::get<std::uint64_t>(ta);
      const auto vb = std::get<std::uint64_t>(tb);
      if (va != vb) return va < vb ? std::strong_ordering::less : std::strong_ordering::greater;
    } else if (na != nb) {
      // qualifier sorts before numeric: 1.0-rc < 1.0.0
      return na ? std::strong_ordering::greater : std::strong_ordering::less;
    } else {
      const auto& sa = std::get<std::string>(ta);
      const auto& sb = std::get<std::string>(tb);
      const int c = sa.compare(sb);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

VersionRange parse_version_range(const std::string& text) {
  if (text.size() < 2) throw ParseError("invalid version range \"" + text + "\"");
  const char open = text.front();
  const char close = text.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')')) {
    throw ParseError("invalid version range \"" + text + "\"");
  }
  const std::string body = text.substr(1, text.size() - 2);
  const std::size_t comma = body.find(',');
  VersionRange r;
  if (comma == std::string::npos) {
    // exact pin [1.2.3]
    if (open != '[' || close != ']' || body.empty()) {
      throw ParseError("invalid version range \"" + text + "\"");
    }
    r.has_lo = r.has_hi = true;
    r.lo_inclusive = r.hi_inclusive = true;
    r.lo = Version::parse(body);
    r.hi = r.lo;
    return r;
  }
  const std::string lo = body.substr(0, comma);
  const std::string hi = body.substr(comma + 1);
  if (!lo.empty()) {
    r.has_lo = true;
    r.lo_inclusive = open == '[';
    r.lo = Version::parse(lo);
  }
  if (!hi.empty()) {
    r.has_hi = true;
    r.hi_inclusive = close == ']';
    r.hi = Version::parse(hi);
  }
  if (!r.has_lo && !r.has_hi) throw ParseError("invalid version range \"" + text + "\"");
  return r;
}

bool range_contains(const VersionRange& range, const Version& v) {
  if (range.has_lo) {
    const auto c = compare_versions(v, range.lo);
    if (c == std::strong_ordering::less) return false;
    if (c == std::strong_ordering::equal && !range.lo_inclusive) return false;
  }
  if (range.has_hi) {
    const auto c = compare_versions(v, range.hi);
    if (c == std::strong_ordering::greater) return false;
    if (c == std::strong_ordering::equal && !range.hi_inclusive) return false;
  }
  return true;
}

} // namespace techlev
