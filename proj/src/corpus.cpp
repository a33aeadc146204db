#include "techlev/corpus.hpp"

#include "techlev/errors.hpp"

namespace techlev {

namespace {

std::vector<std::string> split_colons(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

} // namespace

Coordinate parse_coordinate(const std::string& text) {
  const auto parts = split_colons(text);
  if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
    throw ParseError("invalid coordinate \"" + text + "\" (expected group:artifact)");
  }
  return Coordinate{parts[0], parts[1]};
}

VersionedCoordinate parse_versioned_coordinate(const std::string& text) {
  const auto parts = split_colons(text);
  if (parts.size() != 3 || parts[0].empty() || parts[1].empty() || parts[2].empty()) {
    throw ParseError("invalid coordinate \"" + text +
                     "\" (expected group:artifact:version)");
  }
  return VersionedCoordinate{Coordinate{parts[0], parts[1]}, Version::parse(parts[2])};
}

DependencyScope classify_dependency_scope(const Coordinate& dependent,
                                          const Coordinate& dependency) {
  const std::string& a = dependent.group;
  const std::string& b = dependency.group;
  if (a == b) return DependencyScope::own_project;
  if (b.size() > a.size() && b.compare(0, a.size(), a) == 0 && b[a.size()] == '.') {
    return DependencyScope::own_project;
  }
  return DependencyScope::third_party;
}

} // namespace techlev
