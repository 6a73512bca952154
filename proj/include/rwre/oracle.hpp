#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwre/environment.hpp"

namespace rwre {

enum class NNRegime {
  TransientRightBallistic,
  TransientRightZeroSpeed,
  TransientLeftBallistic,
  TransientLeftZeroSpeed,
  Recurrent,
};

const char* regime_name(NNRegime regime);

struct NNOracleResult {
  NNRegime regime;
  double v = 0.0;            // signed limiting velocity (0 unless ballistic)
  double mean_rho = 0.0;     // E[(1-p)/p]
  double mean_log_rho = 0.0;
  double mean_inv_rho = 0.0;  // E[p/(1-p)]
};

// Classical nearest-neighbor closed forms: regime from the sign of
// E[log rho], speed (1 - E[rho]) / (1 + E[rho]) when E[rho] < 1 (mirrored
// on the left). Atomic nearest-neighbor laws only.
NNOracleResult nn_solomon(const EnvironmentLaw& law);

// Same moments for a Dirichlet nearest-neighbor law with parameters
// (alpha_minus, alpha_plus): rho-moments of p ~ Beta(alpha_plus, alpha_minus).
// E[rho] = alpha_minus / (alpha_plus - 1) (infinite when alpha_plus <= 1),
// E[log rho] = digamma(alpha_minus) - digamma(alpha_plus).
NNOracleResult nn_dirichlet(double alpha_minus, double alpha_plus);

// Mean jump of a homogeneous (single-atom) environment; equals the
// limiting velocity by the law of large numbers when positive.
double homogeneous_velocity(const SiteLaw& site_law);

struct LinearSystemResult {
  double value = 0.0;       // reported value (reflecting-variant solution)
  std::int64_t truncation = 0;  // left truncation depth M at exit
  double lower = 0.0;       // absorbing-left variant
  double upper = 0.0;       // reflecting-left variant
  bool converged = false;   // gap below tolerance before hitting the cap
};

// E_w^0[H_{>=1}] for a homogeneous or periodic environment (one site law
// per residue), via the first-step linear system on states [-M, 0] with
// absorption on [1, inf). Left truncation is handled two ways, absorbing
// (drop mass below -M) and reflecting (redirect it to -M); M doubles until
// the pair agrees within tol or the state count exceeds max_states.
LinearSystemResult expected_hit_right_linear(const std::vector<SiteLaw>& period,
                                             std::int64_t max_states,
                                             double tol);

// E_w^0[N_0^(-inf, barrier)]: expected visits to 0 before hitting
// [barrier, inf), same truncation scheme.
LinearSystemResult expected_occupation_linear(const std::vector<SiteLaw>& period,
                                              std::int64_t barrier,
                                              std::int64_t max_states,
                                              double tol);

double digamma(double x);

}  // namespace rwre
