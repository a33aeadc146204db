#pragma once

#include "techlev/corpus.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace techlev {

struct ReleaseChain {
  std::string chain_id; // "g:a" for the main chain, "g:a@<key>" for branches
  std::vector<LibraryInstance> instances; // input date order preserved
  std::vector<std::int64_t> intervals;    // whole days, size = instances - 1
};

// split one GA's date-ordered release list into a main chain plus branch
// chains keyed by the leading version token(s). a release whose version is
// not newer than the main chain's tail goes to the branch for its key;
// branches are never compared against their own tails.
std::vector<ReleaseChain> split_release_chains(std::vector<LibraryInstance> instances,
                                               int branch_key_tokens = 1);

// fills chain.intervals: whole days (floored) between consecutive releases
void compute_release_intervals(ReleaseChain& chain);

// per-instance view used by the metrics stage: for a consecutive pair
// (r0, r1), rel_interval = days(r1 - r0) and rel_interval_prev = the
// preceding pair's interval (absent for the first pair)
struct PairIntervals {
  std::int64_t rel_interval = 0;
  std::optional<std::int64_t> rel_interval_prev;
};

PairIntervals pair_intervals(const ReleaseChain& chain, std::size_t pair_index);

} // namespace techlev
