#pragma once

#include "techlev/corpus.hpp"
#include "techlev/loc.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace techlev {

struct ExclusionRecord {
  std::string gav;
  std::string reason; // own_loc_below_min | missing_loc_source | unresolved_dependency
  std::string detail;
};

struct InstanceLocDump {
  std::string gav;
  std::vector<FileLoc> files;
};

struct LoadOptions {
  LanguageProfile profile = java_profile();
  std::int64_t loc_filter_min = 100;
  bool transitive_mode = false; // fill trans_loc by GAV-deduplicated closure
  int jobs = 1;                 // source-tree counting fan-out
  bool per_file_loc = false;
};

struct LoadResult {
  Corpus corpus; // sorted by GAV, own_loc always present, dep_loc resolved
  std::vector<ExclusionRecord> exclusions;
  std::vector<InstanceLocDump> per_file; // only when options.per_file_loc
};

// manifest JSON:
// { "libraries": [ { "gav": "g:a:v", "released": "...Z",
//     "source_path": "trees/..." | "own_loc": 1234,
//     "direct_deps": [ { "gav": "g:a:v", "scope": "compile", "own_loc": 99 } ] } ] }
// dependency sizes resolve against the full manifest before the size filter;
// external deps must carry an inline own_loc
LoadResult load_corpus(const std::filesystem::path& manifest_path,
                       const LoadOptions& options);

struct VulnRecord {
  std::string id;
  Coordinate coordinate;
  std::vector<VersionRange> affected;
};

struct VulnDb {
  std::vector<VulnRecord> records;

  std::int64_t count_matching(const Coordinate& coord, const Version& v) const;
};

// JSON array: [ { "id": "V1", "coordinate": "g:a", "affected": ["[1.0,1.5)"] } ]
VulnDb load_vuln_db(const std::filesystem::path& path);

// own_vulns from the db; dep_vulns summed over third-party direct deps
void annotate_vulnerabilities(Corpus& corpus, const VulnDb& db);

} // namespace techlev
