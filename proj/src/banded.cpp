#include "rwre/banded.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rwre {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku),
      data_(static_cast<std::size_t>(2 * kl + ku + 1) * static_cast<std::size_t>(n), 0.0) {
  if (n < 1 || kl < 0 || ku < 0) throw ConfigError("banded matrix: bad shape");
}

// Storage row r = kl + ku + i - j, so entry (i, j) lives at data_[r * n + j].
// Rows r < kl hold fill-in created by row swaps during pivoting.
double& BandedMatrix::at(int i, int j) {
  return data_[static_cast<std::size_t>(kl_ + ku_ + i - j) * n_ + j];
}
const double& BandedMatrix::at(int i, int j) const {
  return data_[static_cast<std::size_t>(kl_ + ku_ + i - j) * n_ + j];
}

void BandedMatrix::set(int i, int j, double value) {
  if (j < i - kl_ || j > i + ku_) throw ConfigError("banded matrix: entry outside band");
  at(i, j) = value;
}

void BandedMatrix::add(int i, int j, double value) {
  if (j < i - kl_ || j > i + ku_) throw ConfigError("banded matrix: entry outside band");
  at(i, j) += value;
}

double BandedMatrix::get(int i, int j) const {
  if (j < i - kl_ || j > i + ku_ + kl_) return 0.0;
  return at(i, j);
}

std::vector<double> BandedMatrix::solve(std::vector<double> rhs) const {
  if (static_cast<int>(rhs.size()) != n_) {
    throw ConfigError("banded solve: rhs size mismatch");
  }
  BandedMatrix work = *this;
  const int width = kl_ + ku_;  // widest reach after pivot swaps

  for (int j = 0; j < n_; ++j) {
    // partial pivot among rows j..j+kl
    const int last_row = std::min(n_ - 1, j + kl_);
    int pivot = j;
    double best = std::abs(work.at(j, j));
    for (int i = j + 1; i <= last_row; ++i) {
      const double v = std::abs(work.at(i, j));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) throw SingularSystem("banded solve: zero pivot column");
    if (pivot != j) {
      const int last_col = std::min(n_ - 1, j + width);
      for (int c = j; c <= last_col; ++c) {
        std::swap(work.at(j, c), work.at(pivot, c));
      }
      std::swap(rhs[j], rhs[pivot]);
    }
    const double d = work.at(j, j);
    for (int i = j + 1; i <= last_row; ++i) {
      const double m = work.at(i, j) / d;
      if (m == 0.0) continue;
      work.at(i, j) = 0.0;
      const int last_col = std::min(n_ - 1, j + width);
      for (int c = j + 1; c <= last_col; ++c) {
        work.at(i, c) -= m * work.at(j, c);
      }
      rhs[i] -= m * rhs[j];
    }
  }

  std::vector<double> x(rhs.size());
  for (int i = n_ - 1; i >= 0; --i) {
    double acc = rhs[i];
    const int last_col = std::min(n_ - 1, i + width);
    for (int c = i + 1; c <= last_col; ++c) {
      acc -= work.at(i, c) * x[c];
    }
    x[i] = acc / work.at(i, i);
  }
  return x;
}

}  // namespace rwre
