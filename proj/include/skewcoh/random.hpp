#pragma once

// Reproducible sampling. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; doubles are formed from the top 53 bits, so the
// same seed yields the same samples on every platform.

#include <cstdint>
#include <random>

#include "skewcoh/states.hpp"

namespace skewcoh {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

inline ComplexMatrix random_hermitian(Rng& rng, Eigen::Index dim) {
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return (m + m.adjoint()) / 2.0;
}

/// B^dagger B for a random complex B.
inline ComplexMatrix random_psd(Rng& rng, Eigen::Index dim) {
  ComplexMatrix b(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) b(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return b.adjoint() * b;
}

/// Uniform inside the correlation tetrahedron (rejection from the cube).
inline BellDiagonalParams random_bell_params(Rng& rng) {
  for (;;) {
    BellDiagonalParams c{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (c.is_physical(0.0)) return c;
  }
}

/// Uniform over physical (r, s, c) in [-1, 1]^5 (rejection).
inline XStateZParams random_x_state_params(Rng& rng) {
  for (;;) {
    XStateZParams p{rng.uniform(-1, 1), rng.uniform(-1, 1),
                    {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    if (x_state_z_min_eigenvalue(p) >= 0.0) return p;
  }
}

/// Random full-rank two-qubit state.
inline DensityMatrix random_density_matrix(Rng& rng, Eigen::Index dim = 4) {
  ComplexMatrix m = random_psd(rng, dim);
  m /= m.trace().real();
  return DensityMatrix((m + m.adjoint()) / 2.0);
}

}  // namespace skewcoh
