#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rwre/regen.hpp"
#include "rwre/stats.hpp"

using namespace rwre;

namespace {

WalkPath make_path(std::vector<std::int64_t> positions) {
  WalkPath p;
  p.start = positions.front();
  p.positions = std::move(positions);
  return p;
}

// Literal transcription of the definition: a strict running maximum that is
// a weak minimum over the observed future and is later exceeded by D.
std::vector<std::int64_t> brute_force(const WalkPath& path, std::int64_t D) {
  const auto& X = path.positions;
  const auto n = static_cast<std::int64_t>(X.size());
  std::vector<std::int64_t> times;
  for (std::int64_t t = 1; t < n; ++t) {
    bool ok = true;
    for (std::int64_t j = 0; j < t && ok; ++j) {
      if (X[static_cast<std::size_t>(j)] >= X[static_cast<std::size_t>(t)]) ok = false;
    }
    bool confirmed = false;
    for (std::int64_t j = t + 1; j < n && ok; ++j) {
      if (X[static_cast<std::size_t>(j)] < X[static_cast<std::size_t>(t)]) ok = false;
      if (X[static_cast<std::size_t>(j)] >=
          X[static_cast<std::size_t>(t)] + D) confirmed = true;
    }
    if (ok && confirmed) times.push_back(t);
  }
  return times;
}

WalkPath random_path(std::uint64_t seed, int len, int L, int R, double up_bias) {
  Stream rng = Stream::keyed(seed, StreamDomain::PathGen, len);
  WalkPath p;
  p.start = 0;
  p.positions.push_back(0);
  std::int64_t pos = 0;
  for (int i = 0; i < len; ++i) {
    const double u = rng.uniform();
    std::int64_t d;
    if (u < up_bias) {
      d = 1 + static_cast<std::int64_t>(rng.uniform() * R);
    } else {
      d = -1 - static_cast<std::int64_t>(rng.uniform() * L);
    }
    d = std::clamp<std::int64_t>(d, -L, R);
    pos += d;
    p.positions.push_back(pos);
  }
  return p;
}

}  // namespace

TEST_CASE("path 0,1,2,3,4 with D=2 confirms times 1 and 2") {
  const RegenerationRecord r = detect_regenerations(make_path({0, 1, 2, 3, 4}), 2);
  CHECK(r.times == std::vector<std::int64_t>{1, 2});
  CHECK(r.positions == std::vector<std::int64_t>{1, 2});
  CHECK(r.unconfirmed_tail_dropped >= 1);
}

TEST_CASE("path 0,1,0,1,2,3 with D=1: the dip kills the first candidate") {
  const RegenerationRecord r =
      detect_regenerations(make_path({0, 1, 0, 1, 2, 3}), 1);
  CHECK(r.times == std::vector<std::int64_t>{4});
  CHECK(r.positions == std::vector<std::int64_t>{2});
}

TEST_CASE("strictly increasing path: every interior time with margin qualifies") {
  const RegenerationRecord r =
      detect_regenerations(make_path({0, 1, 2, 3, 4, 5, 6, 7}), 1);
  CHECK(r.times == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("paths shorter than 2 steps yield an empty record") {
  CHECK(detect_regenerations(make_path({0}), 1).times.empty());
  CHECK(detect_regenerations(make_path({0, 1}), 1).times.empty());
}

TEST_CASE("increments: three confirmed times give one pair") {
  RegenerationRecord r;
  r.times = {1, 2, 3};
  r.positions = {1, 2, 3};
  const IncrementSample s = increments(r);
  CHECK_FALSE(s.too_few);
  REQUIRE(s.pairs.size() == 2);
  CHECK(s.pairs[0] == std::pair<std::int64_t, std::int64_t>{1, 1});
}

TEST_CASE("increments: fewer than two confirmed times is flagged") {
  RegenerationRecord r;
  r.times = {5};
  r.positions = {3};
  CHECK(increments(r).too_few);
}

TEST_CASE("deterministic +1 walk: all increments are (1,1)") {
  std::vector<std::int64_t> xs(1001);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<std::int64_t>(i);
  const IncrementSample s = increments(detect_regenerations(make_path(xs), 2));
  REQUIRE(s.pairs.size() > 900);
  for (const auto& [dt, dx] : s.pairs) {
    CHECK(dt == 1);
    CHECK(dx == 1);
  }
}

TEST_CASE("ratio of pooled increments recovers the speed of a p=0.75 walk") {
  EnvironmentWindow w(EnvironmentLaw::nearest_neighbor({{0.75, 1.0}}), 5);
  Stream rng(6);
  const WalkPath path = simulate_path(w, 0, 1000000, rng);
  const IncrementSample s = increments(detect_regenerations(path, 2));
  double dt = 0.0, dx = 0.0;
  for (const auto& [a, b] : s.pairs) {
    dt += static_cast<double>(a);
    dx += static_cast<double>(b);
  }
  CHECK(std::abs(dx / dt - 0.5) < 0.01);
}

TEST_CASE("property: agrees exactly with the brute-force definition") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int len = 20 + static_cast<int>(seed % 23) * 20;
    const double bias = 0.35 + 0.06 * static_cast<double>(seed % 9);
    const WalkPath p = random_path(seed, len, 2, 3, bias);
    for (std::int64_t D : {1, 2, 5}) {
      const RegenerationRecord fast = detect_regenerations(p, D);
      CHECK(fast.times == brute_force(p, D));
    }
  }
}

TEST_CASE("increasing the confirmation distance never adds times") {
  for (std::uint64_t seed = 300; seed < 350; ++seed) {
    const WalkPath p = random_path(seed, 400, 1, 2, 0.6);
    const auto t1 = detect_regenerations(p, 1).times;
    const auto t3 = detect_regenerations(p, 3).times;
    CHECK(std::includes(t1.begin(), t1.end(), t3.begin(), t3.end()));
  }
}

TEST_CASE("block independence sanity: half-means of time increments agree") {
  EnvironmentWindow w(EnvironmentLaw::nearest_neighbor({{0.7, 1.0}}), 8);
  Stream rng(9);
  const WalkPath path = simulate_path(w, 0, 400000, rng);
  const IncrementSample s = increments(detect_regenerations(path, 2));
  REQUIRE(s.pairs.size() > 1000);
  std::vector<double> first, second;
  const std::size_t half = s.pairs.size() / 2;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    (i < half ? first : second).push_back(static_cast<double>(s.pairs[i].first));
  }
  const Summary a = summarize(first);
  const Summary b = summarize(second);
  const double se = std::sqrt(a.se * a.se + b.se * b.se);
  CHECK(std::abs(a.mean - b.mean) < 4.0 * se);
}

TEST_CASE("regeneration positions are strictly increasing running maxima") {
  const WalkPath p = random_path(777, 500, 2, 2, 0.65);
  const RegenerationRecord r = detect_regenerations(p, 2);
  for (std::size_t k = 1; k < r.positions.size(); ++k) {
    CHECK(r.positions[k] > r.positions[k - 1]);
    CHECK(r.times[k] > r.times[k - 1]);
  }
}
