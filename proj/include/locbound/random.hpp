#pragma once

// Seeded random states, unitaries and channels used by the property tests and the
// verification harness.

#include "locbound/linalg.hpp"
#include "locbound/qstate.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace locbound {

using Rng = std::mt19937_64;

/// splitmix64 step; derives independent sub-seeds from a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace random {

inline Vector gaussian_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(n(rng), n(rng));
  return v;
}

inline Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

inline Vector unit_vector(Eigen::Index dim, Rng& rng) {
  Vector v = gaussian_vector(dim, rng);
  return v / v.norm();
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the phase convention fixed).
inline Matrix haar_unitary(Eigen::Index dim, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

inline PureState pure_state(const RegisterLayout& layout, Rng& rng) {
  return PureState::normalized(layout, gaussian_vector(static_cast<Eigen::Index>(layout.total_dim()), rng));
}

/// Induced-measure mixed state G G†/tr with G of shape dim × rank (rank 0 means full).
inline DensityMatrix density(const RegisterLayout& layout, Rng& rng, std::size_t rank = 0) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  const Matrix g = ginibre(d, rank == 0 ? d : static_cast<Eigen::Index>(rank), rng);
  return DensityMatrix::sanitized(layout, g * g.adjoint());
}

/// Kraus operators (dim_out × dim_in) of a random channel with `count` operators,
/// cut from a Haar isometry.
inline std::vector<Matrix> kraus_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index count, Rng& rng) {
  const Matrix u = haar_unitary(dim_out * count, rng);
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) kraus.push_back(u.block(i * dim_out, 0, dim_out, dim_in));
  return kraus;
}

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace random
}  // namespace locbound
