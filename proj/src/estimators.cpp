#include "rwre/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "rwre/oracle.hpp"
#include "rwre/parallel.hpp"
#include "rwre/stats.hpp"

namespace rwre {

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Ballistic: return "Ballistic";
    case Verdict::ZeroSpeed: return "ZeroSpeed";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

std::uint64_t replica_env_seed(std::uint64_t master, std::int64_t replica,
                               bool quenched) {
  return stream_key(master, StreamDomain::EnvReplica, quenched ? 0 : replica);
}

EstimateWithCI estimate_velocity_slope(const EnvironmentLaw& law,
                                       std::int64_t n_steps, std::int64_t replicas,
                                       std::uint64_t seed,
                                       const EstimatorOpts& opts) {
  if (n_steps < 1 || replicas < 1) {
    throw ConfigError("estimate_velocity_slope: n_steps and replicas must be >= 1");
  }
  std::vector<double> slopes(static_cast<std::size_t>(replicas));
  parallel_for(replicas, opts.workers, [&](std::int64_t i) {
    EnvironmentWindow env(law, replica_env_seed(seed, i, opts.quenched));
    Stream rng = Stream::keyed(seed, StreamDomain::WalkReplica, i);
    std::int64_t pos = 0;
    for (std::int64_t n = 0; n < n_steps; ++n) pos = step(env, pos, rng);
    slopes[static_cast<std::size_t>(i)] =
        static_cast<double>(pos) / static_cast<double>(n_steps);
  });
  const Summary s = summarize(slopes);
  return {s.mean, s.se, s.n, 0.0, BoundKind::None, "velocity_slope", ""};
}

EstimateWithCI estimate_velocity_regen(const EnvironmentLaw& law,
                                       std::int64_t n_steps, std::int64_t replicas,
                                       std::int64_t confirm_distance,
                                       std::uint64_t seed,
                                       const EstimatorOpts& opts) {
  if (n_steps < 1 || replicas < 1) {
    throw ConfigError("estimate_velocity_regen: n_steps and replicas must be >= 1");
  }
  std::vector<IncrementSample> per_replica(static_cast<std::size_t>(replicas));
  parallel_for(replicas, opts.workers, [&](std::int64_t i) {
    EnvironmentWindow env(law, replica_env_seed(seed, i, opts.quenched));
    Stream rng = Stream::keyed(seed, StreamDomain::WalkReplica, i);
    const WalkPath path = simulate_path(env, 0, n_steps, rng);
    per_replica[static_cast<std::size_t>(i)] =
        increments(detect_regenerations(path, confirm_distance));
  });

  // pool in replica order
  std::vector<double> dts, dxs;
  for (const auto& sample : per_replica) {
    for (const auto& [dt, dx] : sample.pairs) {
      dts.push_back(static_cast<double>(dt));
      dxs.push_back(static_cast<double>(dx));
    }
  }
  EstimateWithCI est;
  est.method = "velocity_regen_ratio";
  est.n = static_cast<std::int64_t>(dts.size());
  if (est.n < 10) {
    est.point = std::numeric_limits<double>::quiet_NaN();
    est.diagnostic = "inconclusive: fewer than 10 regeneration increments";
    return est;
  }
  const Summary st = summarize(dts);
  const Summary sx = summarize(dxs);
  const double v = sx.mean / st.mean;
  // delta method: Var(v) ~ Var(dx - v * dt) / (n * mean(dt)^2)
  double ss = 0.0;
  for (std::size_t k = 0; k < dts.size(); ++k) {
    const double r = dxs[k] - v * dts[k];
    ss += r * r;
  }
  const double n = static_cast<double>(est.n);
  const double var_resid = est.n > 1 ? ss / (n - 1.0) : 0.0;
  est.point = v;
  est.stderr_ = std::sqrt(var_resid / n) / st.mean;
  return est;
}

EstimateWithCI estimate_velocity_occupation(const EnvironmentLaw& law,
                                            std::int64_t samples,
                                            std::int64_t search_cap_levels,
                                            std::int64_t barrier,
                                            std::int64_t step_cap,
                                            std::uint64_t seed,
                                            const EstimatorOpts& opts) {
  if (samples < 1) {
    throw ConfigError("estimate_velocity_occupation: samples must be >= 1");
  }
  std::vector<double> values(static_cast<std::size_t>(samples));
  std::vector<char> censored(static_cast<std::size_t>(samples), 0);
  parallel_for(samples, opts.workers, [&](std::int64_t i) {
    const std::uint64_t sample_seed = stream_key(seed, StreamDomain::NbarSample, i);
    std::int64_t cap = search_cap_levels;
    for (;;) {
      try {
        const Nbar0Sample s = sample_Nbar0(law, sample_seed, cap, barrier, step_cap);
        values[static_cast<std::size_t>(i)] = static_cast<double>(s.value);
        censored[static_cast<std::size_t>(i)] = s.censored ? 1 : 0;
        return;
      } catch (const NoCoalescenceError&) {
        if (cap >= 64 * search_cap_levels) throw;
        cap *= 2;  // widen geometrically; coalescences occur a.s. under C4
      }
    }
  });
  const Summary s = summarize(values);
  std::int64_t n_censored = 0;
  for (char c : censored) n_censored += c;
  EstimateWithCI est;
  est.method = "velocity_occupation";
  est.n = s.n;
  est.censored_fraction = static_cast<double>(n_censored) / static_cast<double>(s.n);
  est.point = 1.0 / s.mean;
  est.stderr_ = s.se / (s.mean * s.mean);
  if (n_censored > 0) est.bound = BoundKind::Upper;  // undercounted N => v overstated
  return est;
}

namespace {

DivergingEstimate finish_diverging(std::vector<double> v1, std::vector<double> v2,
                                   std::vector<double> v3, std::int64_t n_censored,
                                   std::array<std::int64_t, 3> caps,
                                   double growth_tol, const char* method) {
  const Summary s1 = summarize(v1);
  const Summary s2 = summarize(v2);
  const Summary s3 = summarize(v3);
  DivergingEstimate out;
  out.base = {s1.mean, s1.se, s1.n,
              static_cast<double>(n_censored) / static_cast<double>(s1.n),
              n_censored > 0 ? BoundKind::Lower : BoundKind::None, method, ""};
  out.by_cap = {s1.mean, s2.mean, s3.mean};
  out.caps = caps;
  out.growth1 = s1.mean > 0.0 ? (s2.mean - s1.mean) / s1.mean : 0.0;
  out.growth2 = s2.mean > 0.0 ? (s3.mean - s2.mean) / s2.mean : 0.0;
  out.diverging = out.growth1 > growth_tol && out.growth2 > growth_tol;
  return out;
}

}  // namespace

DivergingEstimate estimate_mean_h1(const EnvironmentLaw& law, std::int64_t replicas,
                                   std::int64_t step_cap, std::uint64_t seed,
                                   double growth_tol, const EstimatorOpts& opts) {
  if (replicas < 1) throw ConfigError("estimate_mean_h1: replicas must be >= 1");
  const auto n = static_cast<std::size_t>(replicas);
  std::vector<double> t1(n), t2(n), t3(n);
  std::vector<char> censored(n, 0);
  parallel_for(replicas, opts.workers, [&](std::int64_t i) {
    EnvironmentWindow env(law, replica_env_seed(seed, i, opts.quenched));
    Stream rng = Stream::keyed(seed, StreamDomain::WalkReplica, i);
    const HitLean hit = hit_at_or_right_of(env, 0, 1, 4 * step_cap, rng);
    const std::int64_t h = hit.hit ? hit.time : 4 * step_cap;
    const auto u = static_cast<std::size_t>(i);
    t1[u] = static_cast<double>(std::min(h, step_cap));
    t2[u] = static_cast<double>(std::min(h, 2 * step_cap));
    t3[u] = static_cast<double>(std::min(h, 4 * step_cap));
    censored[u] = h > step_cap ? 1 : 0;
  });
  std::int64_t n_censored = 0;
  for (char c : censored) n_censored += c;
  return finish_diverging(std::move(t1), std::move(t2), std::move(t3), n_censored,
                          {step_cap, 2 * step_cap, 4 * step_cap}, growth_tol,
                          "mean_h1");
}

DivergingEstimate estimate_mean_n0(const EnvironmentLaw& law, std::int64_t replicas,
                                   std::int64_t barrier, std::int64_t step_cap,
                                   std::uint64_t seed, double growth_tol,
                                   const EstimatorOpts& opts) {
  if (replicas < 1) throw ConfigError("estimate_mean_n0: replicas must be >= 1");
  const auto n = static_cast<std::size_t>(replicas);
  std::vector<double> c1(n), c2(n), c3(n);
  std::vector<char> censored(n, 0);
  parallel_for(replicas, opts.workers, [&](std::int64_t i) {
    EnvironmentWindow env(law, replica_env_seed(seed, i, opts.quenched));
    Stream rng = Stream::keyed(seed, StreamDomain::WalkReplica, i);
    // One run to 4x the step cap; snapshots of the visit count at the cap
    // and its doublings. A replica that reaches the barrier early has three
    // equal readings; a trapped replica keeps accumulating visits, and the
    // growth across cap doublings is the divergence signature.
    std::int64_t pos = 0;
    std::int64_t count = 0;
    std::int64_t at_c1 = -1, at_c2 = -1;
    std::int64_t steps = 0;
    while (pos < barrier && steps < 4 * step_cap) {
      if (pos == 0) ++count;
      pos = step(env, pos, rng);
      ++steps;
      if (steps == step_cap) at_c1 = count;
      if (steps == 2 * step_cap) at_c2 = count;
    }
    const auto u = static_cast<std::size_t>(i);
    c1[u] = static_cast<double>(at_c1 >= 0 ? at_c1 : count);
    c2[u] = static_cast<double>(at_c2 >= 0 ? at_c2 : count);
    c3[u] = static_cast<double>(count);
    censored[u] = pos < barrier ? 1 : 0;  // the barrier was never reached
  });
  std::int64_t n_censored = 0;
  for (char c : censored) n_censored += c;
  return finish_diverging(std::move(c1), std::move(c2), std::move(c3), n_censored,
                          {step_cap, 2 * step_cap, 4 * step_cap}, growth_tol,
                          "mean_n0");
}

bool transient_right_diagnostic(const EnvironmentLaw& law, std::uint64_t seed) {
  try {
    const NNOracleResult r = nn_solomon(law);
    return r.regime == NNRegime::TransientRightBallistic ||
           r.regime == NNRegime::TransientRightZeroSpeed;
  } catch (const UnsupportedLaw&) {
  }
  if (const auto* d = std::get_if<DirichletLaw>(&law.kind())) {
    if (law.left() == 1 && law.right() == 1 && d->alpha[1] == 0.0) {
      const NNOracleResult r = nn_dirichlet(d->alpha[0], d->alpha[2]);
      return r.regime == NNRegime::TransientRightBallistic ||
             r.regime == NNRegime::TransientRightZeroSpeed;
    }
  }
  // simulation probe: nearly every replica should escape to the right
  const std::int64_t probes = 64;
  const std::int64_t depth = 200;
  std::int64_t right = 0;
  for (std::int64_t i = 0; i < probes; ++i) {
    EnvironmentWindow env(law, stream_key(seed, StreamDomain::Probe, i, 0));
    Stream rng = Stream::keyed(seed, StreamDomain::Probe, i, 1);
    std::int64_t pos = 0;
    std::int64_t steps = 0;
    while (pos > -depth && pos < depth && steps < 10000000) {
      pos = step(env, pos, rng);
      ++steps;
    }
    if (pos >= depth) ++right;
  }
  return right >= (probes * 9) / 10;
}

BallisticityVerdict ballisticity_verdict(const EnvironmentLaw& law,
                                         const Budget& budget,
                                         const Thresholds& thresholds,
                                         std::uint64_t seed,
                                         const EstimatorOpts& opts) {
  if (!transient_right_diagnostic(law, seed)) {
    throw NotTransientRight(
        "ballisticity_verdict: law failed the transient-right (C4) diagnostic");
  }
  BallisticityVerdict out;
  out.slope = estimate_velocity_slope(law, budget.n_steps, budget.replicas, seed, opts);
  const std::int64_t diag = effective_diag_replicas(budget);
  out.mean_h1 = estimate_mean_h1(law, diag, budget.step_cap, seed,
                                 thresholds.growth_tol, opts);
  out.mean_n0 = estimate_mean_n0(law, diag, budget.barrier, budget.step_cap,
                                 seed, thresholds.growth_tol, opts);

  const double sep = thresholds.sigma_mult * out.slope.stderr_;
  const bool slope_positive = out.slope.point > sep;
  const bool slope_zero = std::abs(out.slope.point) <= sep;
  const bool censoring_ok =
      out.mean_h1.base.censored_fraction <= thresholds.censor_max &&
      out.mean_n0.base.censored_fraction <= thresholds.censor_max;

  if (slope_positive && censoring_ok && !out.mean_h1.diverging &&
      !out.mean_n0.diverging) {
    out.verdict = Verdict::Ballistic;
    out.notes = "positive slope with finite hitting/occupation estimates";
  } else if (slope_zero && out.mean_h1.diverging && out.mean_n0.diverging) {
    out.verdict = Verdict::ZeroSpeed;
    out.notes = "slope consistent with 0 and diverging H/N diagnostics";
  } else {
    out.verdict = Verdict::Inconclusive;
    out.notes = "evidence mixed at this budget";
  }
  return out;
}

}  // namespace rwre
