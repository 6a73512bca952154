#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rwre/environment.hpp"

namespace rwre {

struct WalkPath {
  std::int64_t start = 0;
  std::vector<std::int64_t> positions;  // X_0..X_n, X_0 == start
};

// Outcome of running a walk to a stopping rule. `hit == false` means the
// step cap was reached first (a censored observation, not an error).
struct HittingResult {
  bool hit = false;
  std::int64_t time = 0;      // hit time, or the cap when censored
  std::int64_t position = 0;  // X_time
  // site -> occupation count over n in [0, time]; counts sum to time + 1
  std::unordered_map<std::int64_t, std::int64_t> tallies;
};

// Lean variant without tallies for hot loops.
struct HitLean {
  bool hit = false;
  std::int64_t time = 0;
  std::int64_t position = 0;
};

struct OccupationCount {
  std::int64_t count = 0;
  bool censored = false;
};

// One quenched transition from `pos`: pos + offset with offset drawn from
// the realized site law at pos. The window auto-extends as needed.
std::int64_t step(EnvironmentWindow& window, std::int64_t pos, Stream& rng);

// Simulate until the first time X_n >= x (the hitting time of [x, inf)),
// or step_cap steps. The landing position lies in [x, x + R - 1].
HittingResult run_until_at_or_right_of(EnvironmentWindow& window,
                                       std::int64_t start, std::int64_t x,
                                       std::int64_t step_cap, Stream& rng);

// Simulate until the first time X_n == x, or step_cap steps.
HittingResult run_until_hit_exact(EnvironmentWindow& window, std::int64_t start,
                                  std::int64_t x, std::int64_t step_cap,
                                  Stream& rng);

HitLean hit_at_or_right_of(EnvironmentWindow& window, std::int64_t start,
                           std::int64_t x, std::int64_t step_cap, Stream& rng);

// Number of times n < H_{>=barrier} with X_n == site (time 0 counts).
// Requires site < barrier.
OccupationCount occupation_before_level(EnvironmentWindow& window,
                                        std::int64_t start, std::int64_t site,
                                        std::int64_t barrier,
                                        std::int64_t step_cap, Stream& rng);

// Fixed-length trajectory X_0..X_{n_steps}.
WalkPath simulate_path(EnvironmentWindow& window, std::int64_t start,
                       std::int64_t n_steps, Stream& rng);

}  // namespace rwre
