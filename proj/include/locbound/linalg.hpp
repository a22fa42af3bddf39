#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <vector>

namespace locbound {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

inline double hermiticity_defect(const Matrix& m) {
  return m.rows() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigendecomposition of the Hermitian part of `m`; eigenvalues ascending.
inline Eigen::SelfAdjointEigenSolver<Matrix> eigh(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(hermitian_part(m));
}

inline RealVector eigenvalues(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(hermitian_part(m), Eigen::EigenvaluesOnly)
      .eigenvalues();
}

/// Square root of a PSD matrix. Eigenvalues at round-off level (relative to the largest)
/// are treated as zero.
inline Matrix psd_sqrt(const Matrix& m) {
  const auto es = eigh(m);
  const RealVector& ev = es.eigenvalues();
  const double floor = ev.size() == 0 ? 0.0 : 4.0 * static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() * ev.cwiseAbs().maxCoeff();
  const RealVector roots = ev.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

inline double trace_norm_hermitian(const Matrix& m) { return eigenvalues(m).cwiseAbs().sum(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

constexpr bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

constexpr std::size_t log2_exact(std::size_t x) {
  std::size_t r = 0;
  while (x > 1) {
    x >>= 1;
    ++r;
  }
  return r;
}

/// Index bookkeeping for operators acting on a subset of tensor factors.
///
/// For factor dimensions `dims` (first factor most significant) and target factors
/// `targets` (in the order the local operator expects them), `offsets[l]` is the
/// full-index offset of local index `l` and `bases` enumerates all full indices whose
/// target digits are zero. Every full index is uniquely `bases[b] + offsets[l]`.
struct LocalIndexing {
  std::vector<Eigen::Index> offsets;
  std::vector<Eigen::Index> bases;
};

inline std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t p = dims.size(); p-- > 1;) strides[p - 1] = strides[p] * dims[p];
  return strides;
}

inline LocalIndexing local_indexing(const std::vector<std::size_t>& dims,
                                    const std::vector<std::size_t>& targets) {
  const auto strides = strides_of(dims);
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  std::size_t local_dim = 1;
  for (auto t : targets) local_dim *= dims[t];

  LocalIndexing out;
  out.offsets.resize(local_dim);
  for (std::size_t l = 0; l < local_dim; ++l) {
    std::size_t rest = l;
    std::size_t offset = 0;
    for (std::size_t i = targets.size(); i-- > 0;) {
      const std::size_t d = dims[targets[i]];
      offset += (rest % d) * strides[targets[i]];
      rest /= d;
    }
    out.offsets[l] = static_cast<Eigen::Index>(offset);
  }

  std::vector<bool> is_target(dims.size(), false);
  for (auto t : targets) is_target[t] = true;
  out.bases.reserve(total / local_dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    bool zero = true;
    for (auto t : targets) {
      if ((idx / strides[t]) % dims[t] != 0) {
        zero = false;
        break;
      }
    }
    if (zero) out.bases.push_back(static_cast<Eigen::Index>(idx));
  }
  return out;
}

/// m <- (op ⊗ I) m, with `op` acting on the factors described by `ix`.
inline void apply_left(Matrix& m, const Matrix& op, const LocalIndexing& ix) {
  const auto d = static_cast<Eigen::Index>(ix.offsets.size());
  std::vector<Eigen::Index> rows(ix.offsets.size());
  Matrix block(d, m.cols());
  for (auto base : ix.bases) {
    for (Eigen::Index l = 0; l < d; ++l) rows[l] = base + ix.offsets[l];
    block = m(rows, Eigen::all);
    m(rows, Eigen::all) = op * block;
  }
}

/// v <- (op ⊗ I) v.
inline void apply_left(Vector& v, const Matrix& op, const LocalIndexing& ix) {
  const auto d = static_cast<Eigen::Index>(ix.offsets.size());
  std::vector<Eigen::Index> rows(ix.offsets.size());
  Vector block(d);
  for (auto base : ix.bases) {
    for (Eigen::Index l = 0; l < d; ++l) rows[l] = base + ix.offsets[l];
    block = v(rows);
    v(rows) = op * block;
  }
}

/// Returns K M K†, with K acting on the factors described by `ix`.
inline Matrix conjugate_local(const Matrix& m, const Matrix& k, const LocalIndexing& ix) {
  Matrix left = m;
  apply_left(left, k, ix);
  Matrix out = left.adjoint();
  apply_left(out, k, ix);
  return out.adjoint();
}

}  // namespace linalg
}  // namespace locbound
