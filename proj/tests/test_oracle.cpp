#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rwre/banded.hpp"
#include "rwre/oracle.hpp"
#include "rwre/walk.hpp"

using namespace rwre;

namespace {

// Straightforward dense Gaussian elimination with partial pivoting, the
// reference for the banded solver.
std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int j = 0; j < n; ++j) {
    int piv = j;
    for (int i = j + 1; i < n; ++i) {
      if (std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) >
          std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(j)])) {
        piv = i;
      }
    }
    std::swap(a[static_cast<std::size_t>(j)], a[static_cast<std::size_t>(piv)]);
    std::swap(b[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(piv)]);
    for (int i = j + 1; i < n; ++i) {
      const double f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] /
                       a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
      for (int k = j; k < n; ++k) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -=
            f * a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      }
      b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(j)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < n; ++k) {
      s -= a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
           x[static_cast<std::size_t>(k)];
    }
    x[static_cast<std::size_t>(i)] = s / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  }
  return x;
}

SiteLaw nn075() { return nearest_neighbor_site_law(0.75); }

SiteLaw two_jump() { return SiteLaw({1, 2}, {0.5, 0.0, 0.0, 0.5}); }

}  // namespace

TEST_CASE("Solomon: deterministic p=0.75 is ballistic with v=1/2") {
  const NNOracleResult r =
      nn_solomon(EnvironmentLaw::nearest_neighbor({{0.75, 1.0}}));
  CHECK(r.regime == NNRegime::TransientRightBallistic);
  CHECK(r.mean_rho == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(r.v == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("Solomon: p in {0.4, 0.8} equal weights gives v = 1/15") {
  const NNOracleResult r = nn_solomon(
      EnvironmentLaw::nearest_neighbor({{0.4, 0.5}, {0.8, 0.5}}));
  CHECK(r.regime == NNRegime::TransientRightBallistic);
  CHECK(r.mean_rho == doctest::Approx(0.875).epsilon(1e-14));
  CHECK(r.v == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("Solomon: the classical zero-speed mixture") {
  const NNOracleResult r = nn_solomon(
      EnvironmentLaw::nearest_neighbor({{0.2, 0.3}, {0.8, 0.7}}));
  CHECK(r.regime == NNRegime::TransientRightZeroSpeed);
  CHECK(r.mean_rho == doctest::Approx(1.375).epsilon(1e-14));
  CHECK(r.mean_log_rho == doctest::Approx(-0.4 * std::log(4.0)).epsilon(1e-12));
  CHECK(r.v == 0.0);
}

TEST_CASE("Solomon: mirrored laws and the recurrent point") {
  CHECK(nn_solomon(EnvironmentLaw::nearest_neighbor({{0.25, 1.0}})).regime ==
        NNRegime::TransientLeftBallistic);
  CHECK(nn_solomon(EnvironmentLaw::nearest_neighbor({{0.25, 1.0}})).v ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(nn_solomon(EnvironmentLaw::nearest_neighbor({{0.5, 1.0}})).regime ==
        NNRegime::Recurrent);
}

TEST_CASE("Solomon rejects non-nearest-neighbor laws") {
  const EnvironmentLaw law = EnvironmentLaw::atomic({1, 2}, {{two_jump(), 1.0}});
  CHECK_THROWS_AS(nn_solomon(law), UnsupportedLaw);
}

TEST_CASE("digamma reference values") {
  const double gamma = 0.57721566490153286;
  CHECK(digamma(1.0) == doctest::Approx(-gamma).epsilon(1e-12));
  CHECK(digamma(0.5) == doctest::Approx(-gamma - 2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(digamma(3.0) == doctest::Approx(1.5 - gamma).epsilon(1e-12));
  CHECK(digamma(10.0) == doctest::Approx(2.2517525890667211).epsilon(1e-12));
}

TEST_CASE("Dirichlet nearest-neighbor moments: alpha = (1, 3)") {
  const NNOracleResult r = nn_dirichlet(1.0, 3.0);
  CHECK(r.mean_rho == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.mean_log_rho == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(r.regime == NNRegime::TransientRightBallistic);
  CHECK(r.v == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("Dirichlet alpha_plus <= 1 has an infinite rho-moment") {
  const NNOracleResult r = nn_dirichlet(1.0, 1.0);
  CHECK(std::isinf(r.mean_rho));
  CHECK(r.mean_log_rho == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("homogeneous velocity is the mean jump") {
  CHECK(homogeneous_velocity(SiteLaw({1, 1}, {0.0, 0.0, 1.0})) == 1.0);
  CHECK(homogeneous_velocity(two_jump()) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(homogeneous_velocity(nn075()) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hitting-time system: p=0.75 gives h(0) = 2 within 1e-9") {
  const LinearSystemResult r = expected_hit_right_linear({nn075()}, 200000, 1e-9);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) < 1e-9);
}

TEST_CASE("hitting-time system: delta_{+1} gives 1 exactly") {
  const LinearSystemResult r =
      expected_hit_right_linear({SiteLaw({1, 1}, {0.0, 0.0, 1.0})}, 1000, 1e-9);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bracket is ordered and converges for the two-jump law") {
  const LinearSystemResult r = expected_hit_right_linear({two_jump()}, 200000, 1e-9);
  CHECK(r.converged);
  CHECK(r.lower <= r.upper);
  CHECK(r.upper - r.lower < 1e-9);
  CHECK(r.value > 1.0);

  // Monte Carlo cross-validation of the linear system
  EnvironmentWindow w(EnvironmentLaw::atomic({1, 2}, {{two_jump(), 1.0}}), 1);
  const int n = 100000;
  double sum = 0.0, ss = 0.0;
  for (int i = 0; i < n; ++i) {
    Stream rng = Stream::keyed(5, StreamDomain::WalkReplica, i);
    const HitLean h = hit_at_or_right_of(w, 0, 1, 1000000, rng);
    REQUIRE(h.hit);
    const double t = static_cast<double>(h.time);
    sum += t;
    ss += t * t;
  }
  const double mean = sum / n;
  const double se = std::sqrt((ss / n - mean * mean) / n);
  CHECK(std::abs(mean - r.value) < 3.0 * se);
}

TEST_CASE("occupation system: delta_{+1} gives 1; p=0.75 approaches 2") {
  const LinearSystemResult one =
      expected_occupation_linear({SiteLaw({1, 1}, {0.0, 0.0, 1.0})}, 10, 1000, 1e-9);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));

  const LinearSystemResult r =
      expected_occupation_linear({nn075()}, 2000, 200000, 1e-9);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) < 1e-6);
}

TEST_CASE("occupation system value is nondecreasing in the barrier") {
  double prev = 0.0;
  for (std::int64_t barrier : {5, 10, 20, 40, 80}) {
    const LinearSystemResult r =
        expected_occupation_linear({nn075()}, barrier, 200000, 1e-10);
    CHECK(r.value >= prev - 1e-12);
    prev = r.value;
  }
}

TEST_CASE("periodic environments are supported") {
  // alternating p = 0.9 / 0.6; strongly ballistic, system must converge
  const LinearSystemResult r = expected_hit_right_linear(
      {nearest_neighbor_site_law(0.9), nearest_neighbor_site_law(0.6)}, 200000,
      1e-9);
  CHECK(r.converged);
  CHECK(r.value > 1.0);
  CHECK(r.value < 4.0);
}

TEST_CASE("banded solver matches the dense reference on random systems") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Stream rng = Stream::keyed(trial, StreamDomain::PathGen, 99);
    const int n = 5 + static_cast<int>(rng.next_u64() % 40);
    const int kl = 1 + static_cast<int>(rng.next_u64() % 3);
    const int ku = 1 + static_cast<int>(rng.next_u64() % 3);
    BandedMatrix banded(n, kl, ku);
    std::vector<std::vector<double>> dense(
        static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    std::vector<double> rhs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
        double v = 2.0 * rng.uniform() - 1.0;
        if (i == j) v += 4.0;  // keep the system comfortably nonsingular
        banded.set(i, j, v);
        dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      }
      rhs[static_cast<std::size_t>(i)] = 2.0 * rng.uniform() - 1.0;
    }
    const std::vector<double> xb = banded.solve(rhs);
    const std::vector<double> xd = dense_solve(dense, rhs);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(xb[static_cast<std::size_t>(i)] -
                     xd[static_cast<std::size_t>(i)]) < 1e-9);
    }
  }
}

TEST_CASE("singular banded system throws") {
  BandedMatrix m(3, 1, 1);
  m.set(0, 0, 1.0);
  m.set(1, 1, 0.0);
  m.set(2, 2, 1.0);
  CHECK_THROWS_AS(m.solve({1.0, 1.0, 1.0}), SingularSystem);
}
