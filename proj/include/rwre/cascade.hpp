#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rwre/walk.hpp"

namespace rwre {

// Level index k of site x: the interval ((k-1)R, kR] that contains x,
// i.e. k = ceil(x / R).
std::int64_t level_of(std::int64_t x, int R);

// Inclusive site range of level k.
struct LevelSites {
  std::int64_t first;
  std::int64_t last;
};
LevelSites sites_of_level(std::int64_t level, int R);

struct CoalescencePoint {
  std::int64_t site;
  std::int64_t level;
};

// The finite walk launched from one site, stopped on first entry into the
// next level; positions.front() is the start, positions.back() the landing
// site (unless censored at the step cap).
struct FiniteWalk {
  std::vector<std::int64_t> positions;
  bool censored = false;
};

struct Nbar0Sample {
  std::int64_t value = 0;
  std::int64_t coalescence_site = 0;
  std::int64_t barrier = 0;
  bool censored = false;
};

// A cascade: one independent finite walk from every site, all driven by the
// same realized environment. Walks are generated lazily and keyed by
// (master seed, site), so any query order yields identical walks. The
// site range extends on demand in both directions.
class Cascade {
 public:
  Cascade(EnvironmentLaw law, std::uint64_t master_seed, std::int64_t step_cap);

  int jump_right() const { return env_.law().right(); }
  std::uint64_t master_seed() const { return seed_; }
  EnvironmentWindow& env() { return env_; }

  const FiniteWalk& walk_from(std::int64_t site);

  // Generate walks for every site in [lo, hi]; returns the censored count.
  std::int64_t build(std::int64_t lo, std::int64_t hi);

  // Site x such that all R walks from level k-1 first hit level k at x,
  // or nullopt (including when any of those walks is censored). There can
  // be at most one such site per level.
  std::optional<std::int64_t> coalescence_site(std::int64_t level);

  // X^{from_site} truncated to n_steps steps, built by splicing finite
  // walks at their landing points. Throws CascadeCensored if a censored
  // walk blocks the route.
  WalkPath concatenated_walk(std::int64_t from_site, std::int64_t n_steps);

 private:
  FiniteWalk generate_walk(std::int64_t site);

  std::uint64_t seed_;
  std::int64_t step_cap_;
  EnvironmentWindow env_;
  std::unordered_map<std::int64_t, FiniteWalk> walks_;
};

// Eagerly realized cascade over [lo, hi]; rejects the cascade when more
// than max_censored_fraction of the walks hit the step cap.
Cascade build_cascade(const EnvironmentLaw& law, std::int64_t lo, std::int64_t hi,
                      std::uint64_t master_seed, std::int64_t step_cap,
                      double max_censored_fraction = 0.01);

// All coalescence points with level in [lo_level, hi_level].
std::vector<CoalescencePoint> find_coalescences(Cascade& cascade,
                                                std::int64_t lo_level,
                                                std::int64_t hi_level);

// Occupation count of `site` for the bi-infinite walk, realized from the
// rightmost coalescence point whose level lies entirely left of `site`,
// truncated at barrier (visits before H_{>= barrier}) and step-capped.
// Throws NoCoalescenceError when no coalescence is found within
// search_cap_levels levels.
Nbar0Sample sample_Nbar_at(const EnvironmentLaw& law, std::uint64_t master_seed,
                           std::int64_t site, std::int64_t search_cap_levels,
                           std::int64_t barrier, std::int64_t step_cap);

inline Nbar0Sample sample_Nbar0(const EnvironmentLaw& law, std::uint64_t master_seed,
                                std::int64_t search_cap_levels, std::int64_t barrier,
                                std::int64_t step_cap) {
  return sample_Nbar_at(law, master_seed, 0, search_cap_levels, barrier, step_cap);
}

}  // namespace rwre
