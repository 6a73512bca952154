#include "rwre/site_law.hpp"

#include <cmath>
#include <string>

namespace rwre {

SiteLaw::SiteLaw(JumpSupport support, std::vector<double> probs)
    : support_(support), probs_(std::move(probs)) {
  if (support_.left < 1 || support_.right < 1) {
    throw ConfigError("site law: jump support requires L >= 1 and R >= 1");
  }
  if (probs_.size() != static_cast<std::size_t>(support_.width())) {
    throw ConfigError("site law: expected " + std::to_string(support_.width()) +
                      " probabilities, got " + std::to_string(probs_.size()));
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (p < 0.0) throw ConfigError("site law: negative probability entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    throw ConfigError("site law: probabilities sum to " + std::to_string(sum) +
                      ", outside tolerance of 1");
  }
  for (double& p : probs_) p /= sum;
}

int SiteLaw::sample_offset(Stream& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  int last_positive = 0;
  for (int k = -support_.left; k <= support_.right; ++k) {
    const double p = prob(k);
    if (p > 0.0) last_positive = k;
    acc += p;
    if (u < acc) return k;
  }
  // roundoff fell through; return the last offset carrying mass
  return last_positive;
}

double SiteLaw::mean_offset() const {
  double m = 0.0;
  for (int k = -support_.left; k <= support_.right; ++k) m += k * prob(k);
  return m;
}

bool SiteLaw::has_negative_offset() const {
  for (int k = -support_.left; k < 0; ++k)
    if (prob(k) > 0.0) return true;
  return false;
}

bool SiteLaw::has_positive_offset() const {
  for (int k = 1; k <= support_.right; ++k)
    if (prob(k) > 0.0) return true;
  return false;
}

SiteLaw nearest_neighbor_site_law(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw ConfigError("nearest-neighbor site law requires p in (0,1)");
  }
  return SiteLaw({1, 1}, {1.0 - p, 0.0, p});
}

}  // namespace rwre
