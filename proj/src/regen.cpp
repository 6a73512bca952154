#include "rwre/regen.hpp"

#include <limits>

#include "rwre/errors.hpp"

namespace rwre {

RegenerationRecord detect_regenerations(const WalkPath& path,
                                        std::int64_t confirmation_distance) {
  if (confirmation_distance < 1) {
    throw ConfigError("detect_regenerations: confirmation distance must be >= 1");
  }
  RegenerationRecord rec;
  rec.confirmation_distance = confirmation_distance;
  const auto& X = path.positions;
  if (X.size() < 2) return rec;

  // A candidate is a strict running maximum. Any later position strictly
  // below a candidate's height kills it (and everything above it on the
  // stack, which is height-increasing by construction).
  struct Candidate {
    std::int64_t time;
    std::int64_t height;
  };
  std::vector<Candidate> stack;
  std::int64_t running_max = X[0];
  for (std::size_t i = 1; i < X.size(); ++i) {
    const std::int64_t x = X[i];
    while (!stack.empty() && stack.back().height > x) stack.pop_back();
    if (x > running_max) {
      stack.push_back({static_cast<std::int64_t>(i), x});
      running_max = x;
    }
  }

  // Margin check: the walk must reach height + D strictly after the
  // candidate time. Suffix maxima give that in one backward pass.
  std::vector<std::int64_t> suffix_max(X.size());
  std::int64_t m = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = X.size(); i-- > 0;) {
    suffix_max[i] = m;  // max over indices > i
    m = std::max(m, X[i]);
  }

  for (const auto& cand : stack) {
    const auto t = static_cast<std::size_t>(cand.time);
    const bool confirmed =
        t + 1 < X.size() && suffix_max[t] >= cand.height + confirmation_distance;
    if (confirmed) {
      rec.times.push_back(cand.time);
      rec.positions.push_back(cand.height);
    } else {
      ++rec.unconfirmed_tail_dropped;
    }
  }
  return rec;
}

IncrementSample increments(const RegenerationRecord& record) {
  IncrementSample out;
  if (record.times.size() < 2) {
    out.too_few = true;
    return out;
  }
  for (std::size_t k = 1; k < record.times.size(); ++k) {
    out.pairs.emplace_back(record.times[k] - record.times[k - 1],
                           record.positions[k] - record.positions[k - 1]);
  }
  return out;
}

}  // namespace rwre
