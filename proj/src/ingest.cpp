#include "techlev/ingest.hpp"

#include "techlev/csvio.hpp"
#include "techlev/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace techlev {

namespace {

using nlohmann::json;

json parse_json_file(const std::filesystem::path& path, const char* what) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw DataError(std::string(what) + " " + path.string() + " is not valid JSON: " +
                    e.what());
  }
  return j;
}

struct RawEntry {
  LibraryInstance instance;            // own_loc unresolved when source-based
  std::optional<std::string> source;   // manifest-relative path
  std::vector<FileLoc> files;          // per-file dump, when requested
  bool loc_failed = false;
  std::string loc_error;
};

std::string dep_key(const VersionedCoordinate& vc) { return vc.gav(); }

} // namespace

LoadResult load_corpus(const std::filesystem::path& manifest_path,
                       const LoadOptions& options) {
  namespace fs = std::filesystem;
  const json root = parse_json_file(manifest_path, "manifest");
  if (!root.is_object() || !root.contains("libraries") || !root["libraries"].is_array()) {
    throw DataError("manifest " + manifest_path.string() +
                    " must be an object with a \"libraries\" array");
  }
  const fs::path base = manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                        : fs::path(".");

  std::vector<RawEntry> entries;
  std::set<std::string> seen_gavs;
  for (const auto& lib : root["libraries"]) {
    if (!lib.is_object() || !lib.contains("gav") || !lib.contains("released")) {
      throw DataError("manifest entry missing \"gav\" or \"released\" in " +
                      manifest_path.string());
    }
    RawEntry e;
    e.instance.id = parse_versioned_coordinate(lib["gav"].get<std::string>());
    if (!seen_gavs.insert(e.instance.id.gav()).second) {
      throw DataError("duplicate manifest entry " + e.instance.id.gav());
    }
    e.instance.released = parse_utc(lib["released"].get<std::string>());
    if (lib.contains("own_loc")) {
      e.instance.own_loc = lib["own_loc"].get<std::int64_t>();
    } else if (lib.contains("source_path")) {
      e.source = lib["source_path"].get<std::string>();
      e.instance.source_dir = (base / *e.source).string();
    }
    if (lib.contains("direct_deps")) {
      for (const auto& dep : lib["direct_deps"]) {
        DependencyRef ref;
        ref.target = parse_versioned_coordinate(dep.at("gav").get<std::string>());
        if (dep.contains("own_loc")) ref.precomputed_loc = dep["own_loc"].get<std::int64_t>();
        e.instance.dependencies.push_back(std::move(ref));
      }
    }
    entries.push_back(std::move(e));
  }

  // measure source trees, optionally fanned out; output order is fixed by
  // the entry list, so worker count cannot change results
  const int jobs = std::max(1, options.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) break;
      RawEntry& e = entries[i];
      if (e.instance.own_loc || !e.instance.source_dir) continue;
      try {
        std::vector<FileLoc>* sink = options.per_file_loc ? &e.files : nullptr;
        e.instance.own_loc =
            count_library_loc(*e.instance.source_dir, options.profile, sink);
      } catch (const Error& err) {
        e.loc_failed = true;
        e.loc_error = err.what();
      }
    }
  };
  if (jobs == 1 || entries.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // dependency sizes resolve against the full manifest, before any filter
  std::map<std::string, std::int64_t> loc_by_gav;
  for (const auto& e : entries) {
    if (e.instance.own_loc) loc_by_gav[e.instance.id.gav()] = *e.instance.own_loc;
  }
  std::map<std::string, const LibraryInstance*> entry_by_gav;
  for (const auto& e : entries) entry_by_gav[e.instance.id.gav()] = &e.instance;

  auto resolve_loc = [&](const DependencyRef& ref) -> std::optional<std::int64_t> {
    const auto it = loc_by_gav.find(dep_key(ref.target));
    if (it != loc_by_gav.end()) return it->second;
    return ref.precomputed_loc;
  };

  LoadResult result;
  for (auto& e : entries) {
    const std::string gav = e.instance.id.gav();
    if (e.loc_failed) {
      result.exclusions.push_back({gav, "missing_loc_source", e.loc_error});
      continue;
    }
    if (!e.instance.own_loc) {
      result.exclusions.push_back(
          {gav, "missing_loc_source", "no own_loc and no source_path"});
      continue;
    }

    bool unresolved = false;
    std::string missing;
    std::int64_t dep_loc = 0;
    for (const auto& ref : e.instance.dependencies) {
      if (classify_dependency_scope(e.instance.id.coord, ref.target.coord) !=
          DependencyScope::third_party) {
        continue; // own-project deps carry no leverage
      }
      const auto loc = resolve_loc(ref);
      if (!loc) {
        unresolved = true;
        if (!missing.empty()) missing += ", ";
        missing += ref.target.gav();
        continue;
      }
      dep_loc += *loc;
    }
    if (unresolved) {
      result.exclusions.push_back({gav, "unresolved_dependency", missing});
      continue;
    }
    e.instance.dep_loc = dep_loc;

    if (options.transitive_mode) {
      // distinct third-party GAVs reachable beyond the direct set, sizes
      // deduplicated at GAV level
      std::set<std::string> direct;
      for (const auto& ref : e.instance.dependencies) direct.insert(dep_key(ref.target));
      std::set<std::string> visited{gav};
      std::vector<const LibraryInstance*> frontier{&e.instance};
      std::int64_t trans = 0;
      std::string trans_missing;
      while (!frontier.empty()) {
        const LibraryInstance* cur = frontier.back();
        frontier.pop_back();
        for (const auto& ref : cur->dependencies) {
          const std::string key = dep_key(ref.target);
          if (!visited.insert(key).second) continue;
          const bool third_party =
              classify_dependency_scope(e.instance.id.coord, ref.target.coord) ==
              DependencyScope::third_party;
          if (third_party && !direct.count(key)) {
            const auto it = loc_by_gav.find(key);
            const auto loc = it != loc_by_gav.end()
                                 ? std::optional<std::int64_t>(it->second)
                                 : ref.precomputed_loc;
            if (!loc) {
              if (!trans_missing.empty()) trans_missing += ", ";
              trans_missing += key;
            } else {
              trans += *loc;
            }
          }
          const auto sub = entry_by_gav.find(key);
          if (sub != entry_by_gav.end()) frontier.push_back(sub->second);
        }
      }
      if (!trans_missing.empty()) {
        throw DataError("transitive closure of " + gav +
                        " has unresolved dependencies: " + trans_missing);
      }
      e.instance.trans_loc = trans;
    }

    if (*e.instance.own_loc < options.loc_filter_min) {
      result.exclusions.push_back({gav, "own_loc_below_min",
                                   std::to_string(*e.instance.own_loc) + " < " +
                                       std::to_string(options.loc_filter_min)});
      continue;
    }
    if (options.per_file_loc) {
      result.per_file.push_back({gav, std::move(e.files)});
    }
    result.corpus.instances.push_back(std::move(e.instance));
  }

  auto gav_less = [](const LibraryInstance& a, const LibraryInstance& b) {
    if (!(a.id.coord == b.id.coord)) return a.id.coord < b.id.coord;
    const auto c = compare_versions(a.id.version, b.id.version);
    if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
    return a.id.version.text < b.id.version.text;
  };
  std::sort(result.corpus.instances.begin(), result.corpus.instances.end(), gav_less);
  std::sort(result.per_file.begin(), result.per_file.end(),
            [](const auto& a, const auto& b) { return a.gav < b.gav; });
  std::sort(result.exclusions.begin(), result.exclusions.end(),
            [](const auto& a, const auto& b) {
              return a.gav != b.gav ? a.gav < b.gav : a.reason < b.reason;
            });
  return result;
}

std::int64_t VulnDb::count_matching(const Coordinate& coord, const Version& v) const {
  std::int64_t n = 0;
  for (const auto& rec : records) {
    if (!(rec.coordinate == coord)) continue;
    for (const auto& range : rec.affected) {
      if (range_contains(range, v)) {
        ++n;
        break; // one hit per vulnerability id
      }
    }
  }
  return n;
}

VulnDb load_vuln_db(const std::filesystem::path& path) {
  const json root = parse_json_file(path, "vulnerability database");
  if (!root.is_array()) {
    throw DataError("vulnerability database " + path.string() + " must be a JSON array");
  }
  VulnDb db;
  std::set<std::string> ids;
  for (const auto& item : root) {
    VulnRecord rec;
    try {
      rec.id = item.at("id").get<std::string>();
      rec.coordinate = parse_coordinate(item.at("coordinate").get<std::string>());
      for (const auto& r : item.at("affected")) {
        rec.affected.push_back(parse_version_range(r.get<std::string>()));
      }
    } catch (const json::exception& e) {
      throw DataError("malformed vulnerability record" +
                      (rec.id.empty() ? std::string() : " " + rec.id) + ": " + e.what());
    } catch (const ParseError& e) {
      throw DataError("malformed vulnerability record" +
                      (rec.id.empty() ? std::string() : " " + rec.id) + ": " + e.what());
    }
    if (rec.affected.empty()) {
      throw DataError("vulnerability record " + rec.id + " has no affected ranges");
    }
    if (!ids.insert(rec.id).second) {
      throw DataError("duplicate vulnerability id " + rec.id);
    }
    db.records.push_back(std::move(rec));
  }
  return db;
}

void annotate_vulnerabilities(Corpus& corpus, const VulnDb& db) {
  for (auto& inst : corpus.instances) {
    inst.own_vulns = db.count_matching(inst.id.coord, inst.id.version);
    std::int64_t dep_vulns = 0;
    for (const auto& ref : inst.dependencies) {
      if (classify_dependency_scope(inst.id.coord, ref.target.coord) !=
          DependencyScope::third_party) {
        continue;
      }
      dep_vulns += db.count_matching(ref.target.coord, ref.target.version);
    }
    inst.dep_vulns = dep_vulns;
  }
}

} // namespace techlev
