#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ghat/types.hpp"

namespace ghat {

// Deterministic random stream. std::mt19937_64 is bit-exact everywhere; the
// normal variates are hand-rolled Box-Muller because std::normal_distribution
// is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return (eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  long uniform_int(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(uniform() * double(hi - lo + 1));
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  cplx cnormal() { return cplx(normal(), normal()) / std::sqrt(2.0); }

  Mat gaussian_matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cnormal();
    return m;
  }

private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ghat
