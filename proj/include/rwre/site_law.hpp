#pragma once

#include <vector>

#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

namespace rwre {

inline constexpr double kProbSumTolerance = 1e-12;

// Maximal left/right jump sizes; steps are confined to [-left, right].
struct JumpSupport {
  int left;
  int right;
  int width() const { return left + right + 1; }
  bool operator==(const JumpSupport&) const = default;
};

// Probability vector over jump offsets -L..R at a single site. Offset 0
// (a self-loop) is permitted. Entries must be nonnegative and sum to 1
// within kProbSumTolerance; inputs within tolerance are renormalized,
// anything further off is rejected.
class SiteLaw {
 public:
  SiteLaw(JumpSupport support, std::vector<double> probs);

  const JumpSupport& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }

  double prob(int offset) const {
    return probs_[static_cast<std::size_t>(offset + support_.left)];
  }

  // Inverse-CDF draw of a jump offset in [-L, R].
  int sample_offset(Stream& rng) const;

  double mean_offset() const;

  bool has_negative_offset() const;
  bool has_positive_offset() const;

  bool operator==(const SiteLaw&) const = default;

 private:
  JumpSupport support_;
  std::vector<double> probs_;
};

// Nearest-neighbor site law: prob p on +1, 1-p on -1.
SiteLaw nearest_neighbor_site_law(double p);

}  // namespace rwre
