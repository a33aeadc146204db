#include "techlev/fetch.hpp"

#include "techlev/csvio.hpp"
#include "techlev/errors.hpp"

#include <httplib.h>

namespace techlev {

std::string repo_relative_path(const VersionedCoordinate& coord,
                               const std::string& suffix) {
  std::string group_path = coord.coord.group;
  for (char& c : group_path) {
    if (c == '.') c = '/';
  }
  return group_path + "/" + coord.coord.artifact + "/" + coord.version.text + "/" +
         coord.coord.artifact + "-" + coord.version.text + suffix;
}

namespace {

struct BaseUrl {
  std::string origin; // scheme://host[:port]
  std::string prefix; // path prefix, no trailing slash
};

BaseUrl split_base_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("repository URL \"" + url + "\" has no scheme");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  BaseUrl b;
  if (path_start == std::string::npos) {
    b.origin = url;
  } else {
    b.origin = url.substr(0, path_start);
    b.prefix = url.substr(path_start);
    while (!b.prefix.empty() && b.prefix.back() == '/') b.prefix.pop_back();
  }
  return b;
}

void download_one(httplib::Client& client, const std::string& path,
                  const std::filesystem::path& dest) {
  auto res = client.Get(path);
  if (!res) {
    throw NetworkError("request for " + path + " failed: " +
                       httplib::to_string(res.error()));
  }
  if (res->status == httplib::StatusCode::NotFound_404) {
    throw MissingArtifactError("artifact not found: " + path);
  }
  if (res->status != httplib::StatusCode::OK_200) {
    throw NetworkError("request for " + path + " returned status " +
                       std::to_string(res->status));
  }
  atomic_write_file(dest, res->body);
}

} // namespace

FetchResult fetch_remote(const VersionedCoordinate& coord,
                         const std::string& repo_base_url,
                         const std::filesystem::path& cache_dir) {
  FetchResult out;
  out.descriptor = cache_dir / repo_relative_path(coord, ".pom");
  out.sources = cache_dir / repo_relative_path(coord, "-sources.jar");

  std::error_code ec;
  if (std::filesystem::is_regular_file(out.descriptor, ec) &&
      std::filesystem::is_regular_file(out.sources, ec)) {
    out.from_cache = true;
    return out;
  }

  const BaseUrl base = split_base_url(repo_base_url);
  httplib::Client client(base.origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  client.set_follow_location(true);

  download_one(client, base.prefix + "/" + repo_relative_path(coord, ".pom"),
               out.descriptor);
  download_one(client, base.prefix + "/" + repo_relative_path(coord, "-sources.jar"),
               out.sources);
  return out;
}

} // namespace techlev
