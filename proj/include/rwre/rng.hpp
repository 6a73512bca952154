#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace rwre {

// splitmix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
  }
};

// Logical sub-stream tags. Every consumer of randomness derives its own
// stream from (master seed, domain, index...), so results never depend on
// the order in which streams are pulled.
enum class StreamDomain : std::uint64_t {
  EnvSite = 1,       // one stream per environment site
  WalkReplica = 2,   // one stream per simulated replica
  CascadeSite = 3,   // one stream per cascade site walk
  EnvReplica = 4,    // per-replica environment master seed (annealed mode)
  NbarSample = 5,    // per-sample cascade seed
  Probe = 6,         // transience probe
  PathGen = 7,       // synthetic path generation in tests
};

inline std::uint64_t stream_key(std::uint64_t master, StreamDomain domain,
                                std::int64_t a = 0, std::int64_t b = 0) {
  std::uint64_t h = mix64(master ^ 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(domain));
  h = mix64(h ^ static_cast<std::uint64_t>(a));
  h = mix64(h ^ static_cast<std::uint64_t>(b));
  return h;
}

// xoshiro256** seeded through splitmix64.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& word : state_) word = sm.next();
  }

  static Stream keyed(std::uint64_t master, StreamDomain domain,
                      std::int64_t a = 0, std::int64_t b = 0) {
    return Stream(stream_key(master, domain, a, b));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform on [0, 1), 53-bit mantissa
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1)
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return u;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_;
};

// Box-Muller; one normal per call so stream consumption is predictable.
inline double sample_normal(Stream& rng) {
  const double u1 = rng.uniform_pos();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Marsaglia-Tsang gamma sampler, alpha > 0, unit scale.
inline double sample_gamma(double alpha, Stream& rng) {
  if (alpha < 1.0) {
    const double boost = std::pow(rng.uniform_pos(), 1.0 / alpha);
    return sample_gamma(alpha + 1.0, rng) * boost;
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = sample_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace rwre
