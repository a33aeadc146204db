#pragma once

#include "techlev/corpus.hpp"

#include <filesystem>
#include <string>

namespace techlev {

// "org/slf4j/slf4j-api/1.7.25/slf4j-api-1.7.25<suffix>"
std::string repo_relative_path(const VersionedCoordinate& coord,
                               const std::string& suffix);

struct FetchResult {
  std::filesystem::path descriptor; // .pom
  std::filesystem::path sources;    // -sources.jar
  bool from_cache = false;
};

// cache-first: when both files are present no request is made. 404 maps to
// MissingArtifactError, anything else network-shaped to NetworkError.
FetchResult fetch_remote(const VersionedCoordinate& coord,
                         const std::string& repo_base_url,
                         const std::filesystem::path& cache_dir);

} // namespace techlev
