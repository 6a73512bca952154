#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rwre/cascade.hpp"
#include "rwre/config.hpp"
#include "rwre/regen.hpp"

namespace rwre {

enum class BoundKind { None, Lower, Upper };

struct EstimateWithCI {
  double point = 0.0;
  double stderr_ = 0.0;
  std::int64_t n = 0;
  double censored_fraction = 0.0;
  BoundKind bound = BoundKind::None;  // censoring turns the point into a bound
  std::string method;
  std::string diagnostic;  // non-empty marks an inconclusive estimate
};

// Divergence diagnostic: the same replicas re-read at cap, 2x cap and 4x
// cap. DIVERGING when the estimate keeps growing by more than growth_tol
// relative on both doublings.
struct DivergingEstimate {
  EstimateWithCI base;
  std::array<double, 3> by_cap{};
  std::array<std::int64_t, 3> caps{};
  double growth1 = 0.0;
  double growth2 = 0.0;
  bool diverging = false;
};

enum class Verdict { Ballistic, ZeroSpeed, Inconclusive };
const char* verdict_name(Verdict verdict);

struct BallisticityVerdict {
  Verdict verdict = Verdict::Inconclusive;
  EstimateWithCI slope;
  DivergingEstimate mean_h1;
  DivergingEstimate mean_n0;
  std::string notes;
};

struct EstimatorOpts {
  bool quenched = false;  // fixed environment across replicas (diagnostics)
  int workers = 1;
};

// Mean of X_n / n over independent replicas, fresh environment per replica.
EstimateWithCI estimate_velocity_slope(const EnvironmentLaw& law,
                                       std::int64_t n_steps, std::int64_t replicas,
                                       std::uint64_t seed,
                                       const EstimatorOpts& opts = {});

// Pooled regeneration-increment ratio (space over time, first block
// excluded) with a delta-method standard error.
EstimateWithCI estimate_velocity_regen(const EnvironmentLaw& law,
                                       std::int64_t n_steps, std::int64_t replicas,
                                       std::int64_t confirm_distance,
                                       std::uint64_t seed,
                                       const EstimatorOpts& opts = {});

// Reciprocal of the mean occupation count of the walk from -infinity.
// Censored samples undercount, so the point is an upper bound on v when
// any censoring occurred.
EstimateWithCI estimate_velocity_occupation(const EnvironmentLaw& law,
                                            std::int64_t samples,
                                            std::int64_t search_cap_levels,
                                            std::int64_t barrier,
                                            std::int64_t step_cap,
                                            std::uint64_t seed,
                                            const EstimatorOpts& opts = {});

// Mean first hitting time of [1, inf); censored replicas contribute the
// cap (a lower bound). Each replica runs once to 4x the cap; the three
// readings feed the divergence diagnostic.
DivergingEstimate estimate_mean_h1(const EnvironmentLaw& law, std::int64_t replicas,
                                   std::int64_t step_cap, std::uint64_t seed,
                                   double growth_tol = 0.05,
                                   const EstimatorOpts& opts = {});

// Mean occupation of the origin before H_{>= barrier}. Step-cap-doubling
// diagnostic (count snapshots at cap, 2x, 4x from one run): for a
// transient walk nearly all visits to 0 precede the first barrier
// crossing, so a heavy-tailed N_0 shows up as growth in the step cap,
// not the barrier.
DivergingEstimate estimate_mean_n0(const EnvironmentLaw& law, std::int64_t replicas,
                                   std::int64_t barrier, std::int64_t step_cap,
                                   std::uint64_t seed, double growth_tol = 0.05,
                                   const EstimatorOpts& opts = {});

// Heuristic C4 check: closed forms for nearest-neighbor laws (atomic or
// Dirichlet), otherwise a simulation probe.
bool transient_right_diagnostic(const EnvironmentLaw& law, std::uint64_t seed);

BallisticityVerdict ballisticity_verdict(const EnvironmentLaw& law,
                                         const Budget& budget,
                                         const Thresholds& thresholds,
                                         std::uint64_t seed,
                                         const EstimatorOpts& opts = {});

// Environment seed of a replica: shared in quenched mode, fresh otherwise.
std::uint64_t replica_env_seed(std::uint64_t master, std::int64_t replica,
                               bool quenched);

}  // namespace rwre
