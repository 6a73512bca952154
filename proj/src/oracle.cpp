#include "rwre/oracle.hpp"

#include <cmath>
#include <limits>

#include "rwre/banded.hpp"

namespace rwre {

const char* regime_name(NNRegime regime) {
  switch (regime) {
    case NNRegime::TransientRightBallistic: return "transient_right_ballistic";
    case NNRegime::TransientRightZeroSpeed: return "transient_right_zero_speed";
    case NNRegime::TransientLeftBallistic: return "transient_left_ballistic";
    case NNRegime::TransientLeftZeroSpeed: return "transient_left_zero_speed";
    case NNRegime::Recurrent: return "recurrent";
  }
  return "unknown";
}

namespace {

NNOracleResult classify_from_moments(double mean_rho, double mean_log_rho,
                                     double mean_inv_rho) {
  NNOracleResult res;
  res.mean_rho = mean_rho;
  res.mean_log_rho = mean_log_rho;
  res.mean_inv_rho = mean_inv_rho;
  if (mean_log_rho < 0.0) {
    if (mean_rho < 1.0) {
      res.regime = NNRegime::TransientRightBallistic;
      res.v = (1.0 - mean_rho) / (1.0 + mean_rho);
    } else {
      res.regime = NNRegime::TransientRightZeroSpeed;
    }
  } else if (mean_log_rho > 0.0) {
    if (mean_inv_rho < 1.0) {
      res.regime = NNRegime::TransientLeftBallistic;
      res.v = -(1.0 - mean_inv_rho) / (1.0 + mean_inv_rho);
    } else {
      res.regime = NNRegime::TransientLeftZeroSpeed;
    }
  } else {
    res.regime = NNRegime::Recurrent;
  }
  return res;
}

}  // namespace

NNOracleResult nn_solomon(const EnvironmentLaw& law) {
  const auto* nn = std::get_if<NearestNeighborLaw>(&law.kind());
  if (nn == nullptr) {
    throw UnsupportedLaw("nn_solomon: requires an atomic nearest-neighbor law");
  }
  double mean_rho = 0.0, mean_log_rho = 0.0, mean_inv_rho = 0.0;
  for (const auto& atom : nn->atoms) {
    const double rho = (1.0 - atom.p) / atom.p;
    mean_rho += atom.weight * rho;
    mean_log_rho += atom.weight * std::log(rho);
    mean_inv_rho += atom.weight / rho;
  }
  return classify_from_moments(mean_rho, mean_log_rho, mean_inv_rho);
}

double digamma(double x) {
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return acc + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 -
                 inv2 * (1.0 / 120.0 -
                         inv2 * (1.0 / 252.0 -
                                 inv2 * (1.0 / 240.0 - inv2 / 132.0))));
}

NNOracleResult nn_dirichlet(double alpha_minus, double alpha_plus) {
  if (!(alpha_minus > 0.0) || !(alpha_plus > 0.0)) {
    throw UnsupportedLaw("nn_dirichlet: parameters must be positive");
  }
  const double inf = std::numeric_limits<double>::infinity();
  // p ~ Beta(alpha_plus, alpha_minus); rho = (1-p)/p
  const double mean_rho =
      alpha_plus > 1.0 ? alpha_minus / (alpha_plus - 1.0) : inf;
  const double mean_inv_rho =
      alpha_minus > 1.0 ? alpha_plus / (alpha_minus - 1.0) : inf;
  const double mean_log_rho = digamma(alpha_minus) - digamma(alpha_plus);
  return classify_from_moments(mean_rho, mean_log_rho, mean_inv_rho);
}

double homogeneous_velocity(const SiteLaw& site_law) {
  return site_law.mean_offset();
}

namespace {

enum class LeftTruncation { Absorbing, Reflecting };

const SiteLaw& law_at(const std::vector<SiteLaw>& period, std::int64_t x) {
  const auto p = static_cast<std::int64_t>(period.size());
  std::int64_t r = x % p;
  if (r < 0) r += p;
  return period[static_cast<std::size_t>(r)];
}

// States x in [-M, top]; unknown u(x) with u = 0 on [top+1, inf). The
// rhs encodes the additive term of the first-step equation.
std::vector<double> solve_first_step(const std::vector<SiteLaw>& period,
                                     std::int64_t M, std::int64_t top,
                                     LeftTruncation trunc,
                                     const std::vector<double>& rhs) {
  const int L = period.front().support().left;
  const int R = period.front().support().right;
  const int n = static_cast<int>(M + top + 1);  // index i = x + M
  BandedMatrix A(n, L, R);
  for (int i = 0; i < n; ++i) {
    const std::int64_t x = i - M;
    const SiteLaw& site = law_at(period, x);
    A.set(i, i, 1.0 - site.prob(0));
    for (int k = -L; k <= R; ++k) {
      if (k == 0) continue;
      const double p = site.prob(k);
      if (p == 0.0) continue;
      const std::int64_t y = x + k;
      if (y > top) continue;  // absorbed on the right, u = 0
      if (y < -M) {
        if (trunc == LeftTruncation::Reflecting) A.add(i, 0, -p);
        continue;  // absorbing: drop
      }
      A.add(i, static_cast<int>(y + M), -p);
    }
  }
  return A.solve(rhs);
}

LinearSystemResult bracketed_solve(const std::vector<SiteLaw>& period,
                                   std::int64_t top, std::int64_t max_states,
                                   double tol, bool occupation_rhs) {
  const int L = period.front().support().left;
  const int R = period.front().support().right;
  std::int64_t M = std::max<std::int64_t>(L + R, 16);
  LinearSystemResult out;
  for (;;) {
    const int n = static_cast<int>(M + top + 1);
    std::vector<double> rhs(static_cast<std::size_t>(n), occupation_rhs ? 0.0 : 1.0);
    if (occupation_rhs) rhs[static_cast<std::size_t>(M)] = 1.0;  // state x = 0
    const auto absorbing =
        solve_first_step(period, M, top, LeftTruncation::Absorbing, rhs);
    const auto reflecting =
        solve_first_step(period, M, top, LeftTruncation::Reflecting, rhs);
    out.lower = absorbing[static_cast<std::size_t>(M)];
    out.upper = reflecting[static_cast<std::size_t>(M)];
    out.value = out.upper;
    out.truncation = M;
    out.converged = std::abs(out.upper - out.lower) < tol;
    if (out.converged || 2 * M + top + 1 > max_states) return out;
    M *= 2;
  }
}

}  // namespace

LinearSystemResult expected_hit_right_linear(const std::vector<SiteLaw>& period,
                                             std::int64_t max_states, double tol) {
  if (period.empty()) throw ConfigError("expected_hit_right_linear: empty period");
  return bracketed_solve(period, /*top=*/0, max_states, tol, /*occupation_rhs=*/false);
}

LinearSystemResult expected_occupation_linear(const std::vector<SiteLaw>& period,
                                              std::int64_t barrier,
                                              std::int64_t max_states, double tol) {
  if (period.empty()) throw ConfigError("expected_occupation_linear: empty period");
  if (barrier < 1) throw ConfigError("expected_occupation_linear: barrier must be >= 1");
  return bracketed_solve(period, /*top=*/barrier - 1, max_states, tol,
                         /*occupation_rhs=*/true);
}

}  // namespace rwre
