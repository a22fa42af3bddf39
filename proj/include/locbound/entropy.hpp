#pragma once

// Entropic functionals, all in bits.

#include "locbound/error.hpp"
#include "locbound/linalg.hpp"
#include "locbound/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace locbound {

inline constexpr double kEigenCutoff = 1e-12;
inline constexpr double kSupportCutoff = 1e-10;

/// Relative entropy value; `support_violation` stands for +∞.
struct EntropyValue {
  double value = 0.0;
  bool support_violation = false;

  bool finite() const noexcept { return !support_violation; }
  double or_infinity() const noexcept {
    return support_violation ? std::numeric_limits<double>::infinity() : value;
  }
};

/// −Σ λ log₂ λ over a spectrum, ignoring eigenvalues below 1e-12.
inline double spectrum_entropy(const RealVector& ev) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > kEigenCutoff) s -= ev(i) * std::log2(ev(i));
  }
  return std::max(s, 0.0);
}

inline double vn_entropy(const DensityMatrix& rho) { return spectrum_entropy(linalg::eigenvalues(rho.matrix())); }

inline double vn_entropy(const DensityMatrix& rho, const Labels& subset) {
  if (subset.empty()) {
    rho.layout().positions(subset);
    return 0.0;
  }
  return vn_entropy(reduced_state(rho, subset));
}

inline double vn_entropy(const PureState& psi, const Labels& subset) {
  if (subset.empty() || subset.size() == psi.layout().size()) {
    psi.layout().positions(subset);
    return 0.0;
  }
  // The smaller side has the same nonzero spectrum.
  const auto rest = psi.layout().complement(subset);
  const bool use_rest = psi.layout().dim_of(rest) < psi.layout().dim_of(subset);
  return vn_entropy(reduced_state(psi, use_rest ? rest : subset));
}

namespace detail {

/// D(ρ‖σ) for a density matrix ρ and a PSD operator σ of the same dimension.
inline EntropyValue relative_entropy_matrix(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw InputError("relative entropy arguments have different dimensions");
  }
  const auto es = linalg::eigh(sigma);
  const RealVector& lam = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  // Diagonal of ρ in σ's eigenbasis.
  const RealVector weights = (v.adjoint() * linalg::hermitian_part(rho) * v).diagonal().real();

  double kernel_weight = 0.0;
  double cross = 0.0;
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    if (lam(j) <= kSupportCutoff) {
      kernel_weight += weights(j);
    } else {
      cross += weights(j) * std::log2(lam(j));
    }
  }
  if (kernel_weight > kSupportCutoff) return {0.0, true};
  const double neg_entropy = -spectrum_entropy(linalg::eigenvalues(rho));
  return {neg_entropy - cross, false};
}

inline void require_disjoint(const Labels& a, const Labels& b) {
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw InputError("register '" + x + "' appears on both sides");
    }
  }
}

inline Labels join(Labels a, const Labels& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

inline EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_layout(rho, sigma);
  return detail::relative_entropy_matrix(rho.matrix(), sigma.matrix());
}

/// D(ρ‖σ) against a positive operator σ (for example I_A ⊗ ρ_B) on ρ's layout.
inline EntropyValue relative_entropy(const DensityMatrix& rho, const Matrix& sigma) {
  return detail::relative_entropy_matrix(rho.matrix(), sigma);
}

/// I(A⟩B) = S(B) − S(AB). Registers outside A ∪ B are traced out.
inline double coherent_info(const DensityMatrix& rho, const Labels& a, const Labels& b) {
  detail::require_disjoint(a, b);
  if (a.empty() && b.empty()) throw InputError("coherent information needs a non-empty cut");
  const auto ab = detail::join(a, b);
  return vn_entropy(rho, b) - vn_entropy(rho, ab);
}

/// S(A|B) = S(AB) − S(B).
inline double conditional_entropy(const DensityMatrix& rho, const Labels& a, const Labels& b) {
  return -coherent_info(rho, a, b);
}

/// I(A:B|C) = S(A|C) − S(A|BC). Registers outside A ∪ B ∪ C are traced out.
inline double cond_mutual_info(const DensityMatrix& rho, const Labels& a, const Labels& b, const Labels& c) {
  detail::require_disjoint(a, b);
  detail::require_disjoint(a, c);
  detail::require_disjoint(b, c);
  const auto ac = detail::join(a, c);
  const auto bc = detail::join(b, c);
  const auto abc = detail::join(ac, b);
  return vn_entropy(rho, ac) + vn_entropy(rho, bc) - vn_entropy(rho, c) - vn_entropy(rho, abc);
}

/// Binary entropy h(x) in bits.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("binary entropy argument outside [0,1]");
  auto term = [](double t) { return t > 0.0 ? -t * std::log2(t) : 0.0; };
  return term(x) + term(1.0 - x);
}

/// g(ε) = (1+ε) h(ε/(1+ε)).
inline double continuity_g(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InputError("continuity parameter outside [0,1]");
  return (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
}

struct ContinuityValues {
  double h = 0.0;
  double g = 0.0;
};

inline ContinuityValues g_continuity(double eps) { return {binary_entropy(eps), continuity_g(eps)}; }

}  // namespace locbound
