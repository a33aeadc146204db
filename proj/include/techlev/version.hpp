#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace techlev {

// one dotted/dashed segment: either numeric or a lowercased qualifier
using VersionToken = std::variant<std::uint64_t, std::string>;

struct Version {
  std::string text;                // raw form, preserved for round-trip
  std::vector<VersionToken> tokens;

  static Version parse(const std::string& text);
};

std::vector<VersionToken> tokenize_version(const std::string& text);

// numeric < numeric by value; qualifier < numeric; qualifier vs qualifier
// lexicographic; shorter token list padded with numeric zeros
std::strong_ordering compare_versions(const Version& a, const Version& b);

inline bool operator<(const Version& a, const Version& b) {
  return compare_versions(a, b) == std::strong_ordering::less;
}
inline bool operator==(const Version& a, const Version& b) {
  return compare_versions(a, b) == std::strong_ordering::equal;
}

// maven-style range: [lo,hi], (lo,hi), mixed brackets, open ends, or the
// exact pin form [1.2.3]
struct VersionRange {
  bool has_lo = false;
  bool has_hi = false;
  bool lo_inclusive = false;
  bool hi_inclusive = false;
  Version lo;
  Version hi;
};

VersionRange parse_version_range(const std::string& text);
bool range_contains(const VersionRange& range, const Version& v);

} // namespace techlev
