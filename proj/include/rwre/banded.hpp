#pragma once

#include <cstdint>
#include <vector>

#include "rwre/errors.hpp"

namespace rwre {

// Banded matrix with kl subdiagonals and ku superdiagonals, solved by
// Gaussian elimination with partial pivoting (band storage with kl extra
// superdiagonals for pivot fill, LAPACK-style).
class BandedMatrix {
 public:
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }

  // a(i, j); j must lie within [i - kl, i + ku].
  void set(int i, int j, double value);
  void add(int i, int j, double value);
  double get(int i, int j) const;

  // Solves A x = rhs; throws SingularSystem on a zero pivot column.
  std::vector<double> solve(std::vector<double> rhs) const;

 private:
  double& at(int i, int j);
  const double& at(int i, int j) const;

  int n_, kl_, ku_;
  std::vector<double> data_;  // (2*kl + ku + 1) diagonals by n columns
};

}  // namespace rwre
