#pragma once

#include "techlev/timeutil.hpp"
#include "techlev/version.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace techlev {

struct Coordinate {
  std::string group;
  std::string artifact;

  std::string ga() const { return group + ":" + artifact; }
  bool operator==(const Coordinate&) const = default;
  bool operator<(const Coordinate& o) const {
    return group != o.group ? group < o.group : artifact < o.artifact;
  }
};

struct VersionedCoordinate {
  Coordinate coord;
  Version version;

  std::string gav() const { return coord.ga() + ":" + version.text; }
};

// "group:artifact" or "group:artifact:version"
Coordinate parse_coordinate(const std::string& text);
VersionedCoordinate parse_versioned_coordinate(const std::string& text);

enum class DependencyScope { own_project, third_party };

struct DependencyRef {
  VersionedCoordinate target;
  // manifests may carry the dep's own size directly when it is not part of
  // the corpus; resolution prefers a corpus entry when present
  std::optional<std::int64_t> precomputed_loc;
};

struct LibraryInstance {
  VersionedCoordinate id;
  UtcTime released{};
  std::optional<std::int64_t> own_loc;   // absent -> measure from sources
  std::optional<std::string> source_dir; // tree to run the counter over
  std::vector<DependencyRef> dependencies;

  // filled by corpus resolution / annotation
  std::int64_t dep_loc = 0;   // direct third-party lines
  std::int64_t trans_loc = 0; // deduplicated transitive lines beyond direct (opt-in)
  std::int64_t own_vulns = 0;
  std::int64_t dep_vulns = 0;

  bool is_vuln() const { return own_vulns + dep_vulns > 0; }
};

struct Corpus {
  std::vector<LibraryInstance> instances;
};

// own-project iff the groups are equal, or one group is the other plus a
// "."-separated extension (com.acme vs com.acme.plugins)
DependencyScope classify_dependency_scope(const Coordinate& dependent,
                                          const Coordinate& dependency);

} // namespace techlev
