#include "rwre/cascade.hpp"

#include <cassert>
#include <string>

#include "rwre/errors.hpp"

namespace rwre {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  // b > 0
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::int64_t level_of(std::int64_t x, int R) {
  if (R < 1) throw ConfigError("level_of: R must be >= 1");
  return floor_div(x - 1, R) + 1;  // ceil(x / R)
}

LevelSites sites_of_level(std::int64_t level, int R) {
  return {(level - 1) * R + 1, level * R};
}

Cascade::Cascade(EnvironmentLaw law, std::uint64_t master_seed,
                 std::int64_t step_cap)
    : seed_(master_seed), step_cap_(step_cap), env_(std::move(law), master_seed) {
  if (step_cap_ <= 0) throw ConfigError("cascade: step_cap must be positive");
}

FiniteWalk Cascade::generate_walk(std::int64_t site) {
  const int R = jump_right();
  // First entry into level k+1 is the first time the position exceeds kR.
  const std::int64_t boundary = level_of(site, R) * R;
  Stream rng = Stream::keyed(seed_, StreamDomain::CascadeSite, site);
  FiniteWalk walk;
  walk.positions.push_back(site);
  std::int64_t pos = site;
  std::int64_t n = 0;
  while (pos <= boundary && n < step_cap_) {
    pos = step(env_, pos, rng);
    walk.positions.push_back(pos);
    ++n;
  }
  walk.censored = pos <= boundary;
  if (!walk.censored) {
    assert(level_of(pos, R) == level_of(site, R) + 1);
  }
  return walk;
}

const FiniteWalk& Cascade::walk_from(std::int64_t site) {
  auto it = walks_.find(site);
  if (it == walks_.end()) {
    it = walks_.emplace(site, generate_walk(site)).first;
  }
  return it->second;
}

std::int64_t Cascade::build(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ConfigError("cascade: build range requires lo <= hi");
  std::int64_t censored = 0;
  for (std::int64_t a = lo; a <= hi; ++a) {
    if (walk_from(a).censored) ++censored;
  }
  return censored;
}

std::optional<std::int64_t> Cascade::coalescence_site(std::int64_t level) {
  const int R = jump_right();
  const LevelSites prev = sites_of_level(level - 1, R);
  std::optional<std::int64_t> common;
  for (std::int64_t a = prev.first; a <= prev.last; ++a) {
    const FiniteWalk& walk = walk_from(a);
    if (walk.censored) return std::nullopt;
    const std::int64_t landing = walk.positions.back();
    if (common && *common != landing) return std::nullopt;
    common = landing;
  }
  return common;
}

WalkPath Cascade::concatenated_walk(std::int64_t from_site, std::int64_t n_steps) {
  WalkPath path;
  path.start = from_site;
  path.positions.reserve(static_cast<std::size_t>(n_steps) + 1);
  path.positions.push_back(from_site);
  std::int64_t cur = from_site;
  while (static_cast<std::int64_t>(path.positions.size()) <= n_steps) {
    const FiniteWalk& walk = walk_from(cur);
    if (walk.censored) {
      throw CascadeCensored("concatenated_walk: censored finite walk at site " +
                            std::to_string(cur));
    }
    for (std::size_t i = 1; i < walk.positions.size(); ++i) {
      path.positions.push_back(walk.positions[i]);
      if (static_cast<std::int64_t>(path.positions.size()) > n_steps) break;
    }
    cur = walk.positions.back();
  }
  path.positions.resize(static_cast<std::size_t>(n_steps) + 1);
  return path;
}

Cascade build_cascade(const EnvironmentLaw& law, std::int64_t lo, std::int64_t hi,
                      std::uint64_t master_seed, std::int64_t step_cap,
                      double max_censored_fraction) {
  Cascade cascade(law, master_seed, step_cap);
  const std::int64_t censored = cascade.build(lo, hi);
  const double fraction =
      static_cast<double>(censored) / static_cast<double>(hi - lo + 1);
  if (fraction > max_censored_fraction) {
    throw CascadeCensored("cascade rejected: censored fraction " +
                          std::to_string(fraction) + " exceeds threshold " +
                          std::to_string(max_censored_fraction));
  }
  return cascade;
}

std::vector<CoalescencePoint> find_coalescences(Cascade& cascade,
                                                std::int64_t lo_level,
                                                std::int64_t hi_level) {
  std::vector<CoalescencePoint> out;
  for (std::int64_t k = lo_level; k <= hi_level; ++k) {
    if (auto site = cascade.coalescence_site(k)) {
      out.push_back({*site, k});
    }
  }
  return out;
}

Nbar0Sample sample_Nbar_at(const EnvironmentLaw& law, std::uint64_t master_seed,
                           std::int64_t site, std::int64_t search_cap_levels,
                           std::int64_t barrier, std::int64_t step_cap) {
  if (search_cap_levels < 1 || barrier < 1) {
    throw ConfigError("sample_Nbar: search cap and barrier must be positive");
  }
  Cascade cascade(law, master_seed, step_cap);
  const int R = law.right();

  // Rightmost coalescence point whose level lies entirely left of `site`.
  const std::int64_t top_level = level_of(site, R) - 1;
  std::optional<std::int64_t> x_star;
  for (std::int64_t k = top_level; k > top_level - search_cap_levels; --k) {
    if (auto x = cascade.coalescence_site(k)) {
      x_star = x;
      break;
    }
  }
  if (!x_star) {
    throw NoCoalescenceError("no coalescence within " +
                             std::to_string(search_cap_levels) +
                             " levels left of site " + std::to_string(site));
  }

  // Splice walks from x_star and count visits to `site` before the walk
  // first reaches site + barrier. Visits of the bi-infinite walk before
  // coalescence are impossible: a walk from further left must pass through
  // x_star's level (no level may be jumped over) and coalescence routes it
  // through x_star itself.
  Nbar0Sample out;
  out.coalescence_site = *x_star;
  out.barrier = barrier;
  const std::int64_t stop = site + barrier;
  std::int64_t cur = *x_star;
  std::int64_t steps = 0;
  for (;;) {
    const FiniteWalk& walk = cascade.walk_from(cur);
    if (walk.censored) {
      out.censored = true;
      return out;
    }
    for (std::size_t i = 1; i < walk.positions.size(); ++i) {
      const std::int64_t pos = walk.positions[i];
      if (pos >= stop) return out;
      if (pos == site) ++out.value;
      ++steps;
      if (steps >= step_cap) {
        out.censored = true;
        return out;
      }
    }
    cur = walk.positions.back();
  }
}

}  // namespace rwre
