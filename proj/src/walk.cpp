#include "rwre/walk.hpp"

#include <cassert>

namespace rwre {

std::int64_t step(EnvironmentWindow& window, std::int64_t pos, Stream& rng) {
  const SiteLaw& law = window.at(pos);
  const int offset = law.sample_offset(rng);
  assert(offset >= -law.support().left && offset <= law.support().right);
  return pos + offset;
}

namespace {

template <typename StopPred>
HittingResult run_until(EnvironmentWindow& window, std::int64_t start,
                        std::int64_t step_cap, Stream& rng, StopPred stop) {
  if (step_cap <= 0) throw ConfigError("walk: step_cap must be positive");
  HittingResult res;
  std::int64_t pos = start;
  res.tallies[pos] += 1;
  std::int64_t n = 0;
  while (!stop(pos, n) && n < step_cap) {
    pos = step(window, pos, rng);
    ++n;
    res.tallies[pos] += 1;
  }
  res.hit = stop(pos, n);
  res.time = n;
  res.position = pos;
  return res;
}

}  // namespace

HittingResult run_until_at_or_right_of(EnvironmentWindow& window,
                                       std::int64_t start, std::int64_t x,
                                       std::int64_t step_cap, Stream& rng) {
  return run_until(window, start, step_cap, rng,
                   [x](std::int64_t pos, std::int64_t) { return pos >= x; });
}

HittingResult run_until_hit_exact(EnvironmentWindow& window, std::int64_t start,
                                  std::int64_t x, std::int64_t step_cap,
                                  Stream& rng) {
  // H_x as inf{n >= 0 : X_n = x}; a walk started at x hits at time 0.
  return run_until(window, start, step_cap, rng,
                   [x](std::int64_t pos, std::int64_t) { return pos == x; });
}

HitLean hit_at_or_right_of(EnvironmentWindow& window, std::int64_t start,
                           std::int64_t x, std::int64_t step_cap, Stream& rng) {
  if (step_cap <= 0) throw ConfigError("walk: step_cap must be positive");
  std::int64_t pos = start;
  std::int64_t n = 0;
  while (pos < x && n < step_cap) {
    pos = step(window, pos, rng);
    ++n;
  }
  return {pos >= x, n, pos};
}

OccupationCount occupation_before_level(EnvironmentWindow& window,
                                        std::int64_t start, std::int64_t site,
                                        std::int64_t barrier,
                                        std::int64_t step_cap, Stream& rng) {
  if (site >= barrier) {
    throw ConfigError("occupation_before_level: requires site < barrier");
  }
  if (step_cap <= 0) throw ConfigError("walk: step_cap must be positive");
  OccupationCount out;
  std::int64_t pos = start;
  std::int64_t n = 0;
  while (pos < barrier && n < step_cap) {
    if (pos == site) ++out.count;
    pos = step(window, pos, rng);
    ++n;
  }
  out.censored = pos < barrier;  // cap reached before H_{>=barrier}
  return out;
}

WalkPath simulate_path(EnvironmentWindow& window, std::int64_t start,
                       std::int64_t n_steps, Stream& rng) {
  WalkPath path;
  path.start = start;
  path.positions.reserve(static_cast<std::size_t>(n_steps) + 1);
  path.positions.push_back(start);
  std::int64_t pos = start;
  for (std::int64_t i = 0; i < n_steps; ++i) {
    pos = step(window, pos, rng);
    path.positions.push_back(pos);
  }
  return path;
}

}  // namespace rwre
