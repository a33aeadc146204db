#include "techlev/chains.hpp"

#include "techlev/errors.hpp"

#include <map>

namespace techlev {

namespace {

std::string branch_key(const Version& v, int tokens) {
  std::string key;
  const int n = std::min<int>(tokens, static_cast<int>(v.tokens.size()));
  for (int i = 0; i < n; ++i) {
    if (i) key += '.';
    if (std::holds_alternative<std::uint64_t>(v.tokens[i])) {
      key += std::to_string(std::get<std::uint64_t>(v.tokens[i]));
    } else {
      key += std::get<std::string>(v.tokens[i]);
    }
  }
  return key;
}

} // namespace

std::vector<ReleaseChain> split_release_chains(std::vector<LibraryInstance> instances,
                                               int branch_key_tokens) {
  if (instances.empty()) return {};
  if (branch_key_tokens < 1) throw ConfigError("branch_key_tokens must be >= 1");

  for (std::size_t i = 1; i < instances.size(); ++i) {
    const auto& prev = instances[i - 1];
    const auto& cur = instances[i];
    if (cur.released < prev.released ||
        (cur.released == prev.released &&
         compare_versions(cur.id.version, prev.id.version) == std::strong_ordering::less)) {
      throw DataError("release list for " + cur.id.coord.ga() +
                      " is not sorted by date (ties by version)");
    }
  }

  const std::string ga = instances.front().id.coord.ga();
  ReleaseChain main;
  main.chain_id = ga;
  main.instances.push_back(instances.front());

  std::map<std::string, ReleaseChain> branches; // key order = output order
  for (std::size_t i = 1; i < instances.size(); ++i) {
    LibraryInstance& cur = instances[i];
    const Version& tail = main.instances.back().id.version;
    if (compare_versions(cur.id.version, tail) == std::strong_ordering::greater) {
      main.instances.push_back(std::move(cur));
      continue;
    }
    const std::string key = branch_key(cur.id.version, branch_key_tokens);
    auto [it, inserted] = branches.try_emplace(key);
    if (inserted) it->second.chain_id = ga + "@" + key;
    it->second.instances.push_back(std::move(cur));
  }

  std::vector<ReleaseChain> out;
  out.push_back(std::move(main));
  for (auto& [key, chain] : branches) out.push_back(std::move(chain));
  for (auto& chain : out) compute_release_intervals(chain);
  return out;
}

void compute_release_intervals(ReleaseChain& chain) {
  chain.intervals.clear();
  for (std::size_t i = 1; i < chain.instances.size(); ++i) {
    const auto d = days_between(chain.instances[i - 1].released,
                                chain.instances[i].released);
    chain.intervals.push_back(d < 0 ? 0 : d);
  }
}

PairIntervals pair_intervals(const ReleaseChain& chain, std::size_t pair_index) {
  if (pair_index >= chain.intervals.size()) {
    throw DataError("pair index out of range for chain " + chain.chain_id);
  }
  PairIntervals p;
  p.rel_interval = chain.intervals[pair_index];
  if (pair_index > 0) p.rel_interval_prev = chain.intervals[pair_index - 1];
  return p;
}

} // namespace techlev
