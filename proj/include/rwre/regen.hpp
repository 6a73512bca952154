#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rwre/walk.hpp"

namespace rwre {

// Confirmed regeneration times of a finite trajectory. A time n qualifies
// when X_n is a strict maximum over the past, a weak minimum over the
// observed future, and the walk later reaches X_n + confirmation_distance.
// Candidates at the path end that never earn the margin are dropped and
// counted, never reported.
struct RegenerationRecord {
  std::vector<std::int64_t> times;      // increasing
  std::vector<std::int64_t> positions;  // X_{tau_k}
  std::int64_t confirmation_distance = 0;
  std::int64_t unconfirmed_tail_dropped = 0;
};

// Pairs (tau_k - tau_{k-1}, X_{tau_k} - X_{tau_{k-1}}) for k >= 2; the
// first block is excluded (it is not exchangeable with the rest).
struct IncrementSample {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (dt, dx)
  bool too_few = false;
};

// Single left-to-right pass with a candidate stack plus one backward
// suffix-max pass; O(n) amortized.
RegenerationRecord detect_regenerations(const WalkPath& path, std::int64_t confirmation_distance);

IncrementSample increments(const RegenerationRecord& record);

}  // namespace rwre
