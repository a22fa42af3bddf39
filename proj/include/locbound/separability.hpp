#pragma once

// Relative entropy of entanglement across a bipartite cut.
//
// ree_lower is certified (coherent information in either direction). ree_upper
// minimizes D(ρ‖σ) over explicit separable ensembles σ = Σ_t p_t |a_t⟩⟨a_t| ⊗ |b_t⟩⟨b_t|;
// any ensemble it returns is a valid witness, so the result is always an upper bound.

#include "locbound/detail/parallel.hpp"
#include "locbound/entropy.hpp"
#include "locbound/error.hpp"
#include "locbound/linalg.hpp"
#include "locbound/qstate.hpp"
#include "locbound/random.hpp"

#include <ceres/gradient_problem.h>
#include <ceres/gradient_problem_solver.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace locbound {

/// Bipartition A:B. Registers of the state outside A ∪ B are traced out.
struct Cut {
  Labels a;
  Labels b;
};

struct ProductTerm {
  double weight = 0.0;
  Vector a;  // unit vector on the A side (cut.a order)
  Vector b;  // unit vector on the B side (cut.b order)
};

struct SeparableEnsemble {
  Cut cut;
  std::vector<ProductTerm> terms;

  /// Σ_t p_t |a_t⟩⟨a_t| ⊗ |b_t⟩⟨b_t| in the register order cut.a, cut.b.
  Matrix assemble() const {
    if (terms.empty()) return {};
    const Eigen::Index d = terms.front().a.size() * terms.front().b.size();
    Matrix sigma = Matrix::Zero(d, d);
    for (const auto& t : terms) {
      const Vector psi = linalg::kron(t.a, t.b);
      sigma.noalias() += t.weight * psi * psi.adjoint();
    }
    return sigma;
  }
};

struct ReeBudget {
  int restarts = 20;
  int iterations = 2000;
  std::uint64_t seed = 0xC0DE;
};

struct OptimizerDiagnostics {
  int restarts = 0;
  long iterations = 0;
  bool converged = false;
};

struct ReeUpper {
  double value = 0.0;
  SeparableEnsemble ensemble;
  OptimizerDiagnostics diagnostics;
};

struct ReeBracket {
  double lower = 0.0;
  double upper = 0.0;
  SeparableEnsemble ensemble;
  OptimizerDiagnostics diagnostics;
};

inline constexpr std::size_t kMaxReeDimension = 64;

namespace detail {

inline void require_valid_cut(const RegisterLayout& layout, const Cut& cut) {
  if (cut.a.empty() || cut.b.empty()) throw InputError("cut sides must be non-empty");
  require_disjoint(cut.a, cut.b);
  layout.positions(join(cut.a, cut.b));
}

/// ρ restricted to A ∪ B with registers ordered as cut.a then cut.b.
inline DensityMatrix cut_state(const DensityMatrix& rho, const Cut& cut) {
  require_valid_cut(rho.layout(), cut);
  const auto ab = join(cut.a, cut.b);
  const auto reduced = ab.size() == rho.layout().size() ? rho : reduced_state(rho, ab);
  return permute(reduced, ab);
}

/// D(ρ‖σ) in bits as a function of unconstrained ensemble parameters. Per term:
/// one softmax logit, then the real and imaginary parts of the unnormalized A and
/// B vectors.
class ReeObjective final : public ceres::FirstOrderFunction {
 public:
  ReeObjective(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b, Eigen::Index terms)
      : rho_(rho), da_(dim_a), db_(dim_b), terms_(terms) {
    neg_entropy_ = -spectrum_entropy(linalg::eigenvalues(rho_));
  }

  Eigen::Index stride() const { return 1 + 2 * da_ + 2 * db_; }
  int NumParameters() const override { return static_cast<int>(terms_ * stride()); }

  bool Evaluate(const double* x, double* cost, double* gradient) const override {
    const auto n = da_ * db_;
    std::vector<double> p(static_cast<std::size_t>(terms_));
    std::vector<Vector> a(static_cast<std::size_t>(terms_)), b(static_cast<std::size_t>(terms_));
    std::vector<double> na(static_cast<std::size_t>(terms_)), nb(static_cast<std::size_t>(terms_));

    double wmax = -std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < terms_; ++t) wmax = std::max(wmax, x[t * stride()]);
    double z = 0.0;
    for (Eigen::Index t = 0; t < terms_; ++t) {
      const auto ti = static_cast<std::size_t>(t);
      const double* q = x + t * stride();
      p[ti] = std::exp(q[0] - wmax);
      z += p[ti];
      a[ti] = unpack(q + 1, da_);
      b[ti] = unpack(q + 1 + 2 * da_, db_);
      na[ti] = a[ti].norm();
      nb[ti] = b[ti].norm();
      if (!(na[ti] > 0.0) || !(nb[ti] > 0.0)) return false;
      a[ti] /= na[ti];
      b[ti] /= nb[ti];
    }
    Matrix sigma = Matrix::Zero(n, n);
    std::vector<Vector> psi(static_cast<std::size_t>(terms_));
    for (std::size_t t = 0; t < psi.size(); ++t) {
      p[t] /= z;
      psi[t] = linalg::kron(a[t], b[t]);
      sigma.noalias() += p[t] * psi[t] * psi[t].adjoint();
    }

    const auto es = linalg::eigh(sigma);
    RealVector lam = es.eigenvalues().cwiseMax(kEigenFloor);
    const Matrix& f = es.eigenvectors();
    const Matrix rt = f.adjoint() * rho_ * f;
    double cross = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) cross += rt(j, j).real() * std::log2(lam(j));
    *cost = neg_entropy_ - cross;
    if (!std::isfinite(*cost)) return false;
    if (gradient == nullptr) return true;

    // Fréchet derivative of tr ρ log σ through divided differences of log.
    Matrix weighted(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double li = lam(i), lj = lam(j);
        const double diff = li - lj;
        const double dd = std::abs(diff) > 1e-9 * std::max(li, lj) ? (std::log(li) - std::log(lj)) / diff
                                                                     : 2.0 / (li + lj);
        weighted(i, j) = rt(i, j) * dd;
      }
    }
    const Matrix g = -(f * weighted * f.adjoint()) / std::log(2.0);

    std::vector<double> qv(psi.size());
    double mean = 0.0;
    for (std::size_t t = 0; t < psi.size(); ++t) {
      const Vector gpsi = g * psi[t];
      qv[t] = psi[t].dot(gpsi).real();
      mean += p[t] * qv[t];
      Vector va = Vector::Zero(da_), vb = Vector::Zero(db_);
      for (Eigen::Index i = 0; i < da_; ++i) {
        for (Eigen::Index j = 0; j < db_; ++j) {
          const Complex e = gpsi(i * db_ + j);
          va(i) += std::conj(b[t](j)) * e;
          vb(j) += std::conj(a[t](i)) * e;
        }
      }
      double* out = gradient + static_cast<Eigen::Index>(t) * stride();
      project(a[t], va, 2.0 * p[t], na[t], out + 1);
      project(b[t], vb, 2.0 * p[t], nb[t], out + 1 + 2 * da_);
    }
    for (std::size_t t = 0; t < psi.size(); ++t) {
      gradient[static_cast<Eigen::Index>(t) * stride()] = p[t] * (qv[t] - mean);
    }
    return true;
  }

  SeparableEnsemble ensemble(const double* x, const Cut& cut) const {
    SeparableEnsemble out{cut, {}};
    double wmax = -std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < terms_; ++t) wmax = std::max(wmax, x[t * stride()]);
    double z = 0.0;
    for (Eigen::Index t = 0; t < terms_; ++t) {
      const double* q = x + t * stride();
      Vector a = unpack(q + 1, da_), b = unpack(q + 1 + 2 * da_, db_);
      const double w = std::exp(q[0] - wmax);
      z += w;
      out.terms.push_back({w, a / a.norm(), b / b.norm()});
    }
    for (auto& t : out.terms) t.weight /= z;
    return out;
  }

  static void pack(const Vector& v, double* out) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out[i] = v(i).real();
      out[v.size() + i] = v(i).imag();
    }
  }

 private:
  static constexpr double kEigenFloor = 1e-30;

  static Vector unpack(const double* q, Eigen::Index dim) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(q[i], q[dim + i]);
    return v;
  }

  // Gradient of c·Re⟨v̂|M|v̂⟩-type terms with respect to the unnormalized vector.
  static void project(const Vector& unit, const Vector& v, double scale, double norm, double* out) {
    const Eigen::Index d = unit.size();
    double radial = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      radial += unit(i).real() * v(i).real() + unit(i).imag() * v(i).imag();
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      out[i] = scale * (v(i).real() - radial * unit(i).real()) / norm;
      out[d + i] = scale * (v(i).imag() - radial * unit(i).imag()) / norm;
    }
  }

  Matrix rho_;
  Eigen::Index da_, db_, terms_;
  double neg_entropy_ = 0.0;
};

/// Restart 0: ρ dephased in the product of local eigenbases (optimal for pure states),
/// padded with negligible random terms.
inline std::vector<double> informed_start(const DensityMatrix& rho, const Cut& cut, const ReeObjective& obj,
                                          Eigen::Index da, Eigen::Index db, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(obj.NumParameters()));
  const auto ea = linalg::eigh(reduced_state(rho, cut.a).matrix());
  const auto eb = linalg::eigh(reduced_state(rho, cut.b).matrix());
  const auto terms = da * db * da * db;
  for (Eigen::Index t = 0; t < terms; ++t) {
    double* q = x.data() + t * obj.stride();
    Vector a, b;
    double weight = 1e-12;
    if (t < da * db) {
      a = ea.eigenvectors().col(t / db);
      b = eb.eigenvectors().col(t % db);
      const Vector psi = linalg::kron(a, b);
      weight = std::max(psi.dot(rho.matrix() * psi).real(), 1e-12);
    } else {
      a = random::unit_vector(da, rng);
      b = random::unit_vector(db, rng);
    }
    q[0] = std::log(weight);
    ReeObjective::pack(a, q + 1);
    ReeObjective::pack(b, q + 1 + 2 * da);
  }
  return x;
}

inline std::vector<double> random_start(const ReeObjective& obj, Eigen::Index da, Eigen::Index db, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(obj.NumParameters()));
  std::normal_distribution<double> n(0.0, 1.0);
  const auto terms = da * db * da * db;
  for (Eigen::Index t = 0; t < terms; ++t) {
    double* q = x.data() + t * obj.stride();
    q[0] = n(rng);
    ReeObjective::pack(random::unit_vector(da, rng), q + 1);
    ReeObjective::pack(random::unit_vector(db, rng), q + 1 + 2 * da);
  }
  return x;
}

}  // namespace detail

/// max(I(A⟩B), I(B⟩A), 0); never exceeds the relative entropy of entanglement.
inline double ree_lower(const DensityMatrix& rho, const Cut& cut) {
  detail::require_valid_cut(rho.layout(), cut);
  return std::max({coherent_info(rho, cut.a, cut.b), coherent_info(rho, cut.b, cut.a), 0.0});
}

/// D(ρ‖σ) for the state assembled from `ensemble`.
inline EntropyValue ensemble_relative_entropy(const DensityMatrix& rho, const SeparableEnsemble& ensemble) {
  const auto state = detail::cut_state(rho, ensemble.cut);
  return relative_entropy(state, ensemble.assemble());
}

/// Pushes an ensemble through a separable channel with Kraus operators K_A ⊗ K_B.
inline SeparableEnsemble transport(const SeparableEnsemble& ensemble,
                                   const std::vector<std::pair<Matrix, Matrix>>& kraus) {
  SeparableEnsemble out{ensemble.cut, {}};
  for (const auto& t : ensemble.terms) {
    for (const auto& [ka, kb] : kraus) {
      Vector a = ka * t.a, b = kb * t.b;
      const double w = t.weight * a.squaredNorm() * b.squaredNorm();
      if (w <= 0.0) continue;
      out.terms.push_back({w, a / a.norm(), b / b.norm()});
    }
  }
  return out;
}

inline ReeUpper ree_upper(const DensityMatrix& rho, const Cut& cut, const ReeBudget& budget = {}) {
  const auto state = detail::cut_state(rho, cut);
  const auto da = static_cast<Eigen::Index>(state.layout().dim_of(cut.a));
  const auto db = static_cast<Eigen::Index>(state.layout().dim_of(cut.b));
  if (static_cast<std::size_t>(da * db) > kMaxReeDimension) {
    throw CapacityError("REE upper bound supports total dimension at most 64");
  }
  if (budget.restarts < 1 || budget.iterations < 0) throw InputError("REE budget must allow one restart");

  const double lower = ree_lower(state, cut);
  const detail::ReeObjective probe(state.matrix(), da, db, da * db * da * db);

  struct Outcome {
    double value = std::numeric_limits<double>::infinity();
    SeparableEnsemble ensemble;
    long iterations = 0;
    bool converged = false;
  };
  auto run = [&](int r) {
    Rng rng(derive_seed(budget.seed, static_cast<std::uint64_t>(r)));
    std::vector<double> x = r == 0 ? detail::informed_start(state, cut, probe, da, db, rng)
                                   : detail::random_start(probe, da, db, rng);
    Outcome out;
    if (budget.iterations > 0) {
      ceres::GradientProblem problem(new detail::ReeObjective(state.matrix(), da, db, da * db * da * db));
      ceres::GradientProblemSolver::Options options;
      options.line_search_direction_type = ceres::LBFGS;
      options.max_num_iterations = budget.iterations;
      options.function_tolerance = 1e-13;
      options.gradient_tolerance = 1e-11;
      options.parameter_tolerance = 1e-13;
      options.logging_type = ceres::SILENT;
      options.minimizer_progress_to_stdout = false;
      ceres::GradientProblemSolver::Summary summary;
      ceres::Solve(options, problem, x.data(), &summary);
      out.iterations = static_cast<long>(summary.iterations.size());
      out.converged = summary.termination_type == ceres::CONVERGENCE;
    }
    out.ensemble = probe.ensemble(x.data(), cut);
    const auto d = relative_entropy(state, out.ensemble.assemble());
    if (d.finite()) out.value = std::max(d.value, 0.0);
    return out;
  };

  // Restarts run in batches; the result is the best over the restart prefix ending at
  // the first restart that meets the certified lower bound, independent of batch size.
  const auto restarts = static_cast<std::size_t>(budget.restarts);
  const std::size_t batch = std::max<std::size_t>(1, detail::worker_count());
  ReeUpper result;
  result.value = std::numeric_limits<double>::infinity();
  bool done = false;
  for (std::size_t start = 0; start < restarts && !done; start += batch) {
    const std::size_t count = std::min(batch, restarts - start);
    std::vector<Outcome> outcomes(count);
    detail::parallel_for(count, [&](std::size_t i) { outcomes[i] = run(static_cast<int>(start + i)); });
    for (auto& o : outcomes) {
      ++result.diagnostics.restarts;
      result.diagnostics.iterations += o.iterations;
      if (o.value < result.value) {
        result.value = o.value;
        result.ensemble = std::move(o.ensemble);
        result.diagnostics.converged = o.converged;
      }
      if (result.value <= lower + 1e-12) {
        done = true;
        break;
      }
    }
  }
  return result;
}

inline ReeBracket ree_bracket(const DensityMatrix& rho, const Cut& cut, const ReeBudget& budget = {}) {
  auto up = ree_upper(rho, cut, budget);
  return {ree_lower(rho, cut), up.value, std::move(up.ensemble), up.diagnostics};
}

/// Upper bound across Γ : Γ̄X for a classical-quantum state, X joining side B:
/// Σ_s q_s ree_upper(ρ_s). Sound by convexity; equal to D against the branch-wise witness.
inline double ree_upper_cq(const ClassicalQuantumState& state, const Cut& cut, const ReeBudget& budget = {}) {
  double total = 0.0;
  for (const auto& br : state.branches()) {
    if (br.weight == 0.0) continue;
    total += br.weight * ree_upper(br.state, cut, budget).value;
  }
  return total;
}

/// Certified lower bound across A : B X on the block-diagonal embedding of the branches.
inline double ree_lower_cq(const ClassicalQuantumState& state, const Cut& cut,
                           const std::string& classical_label = "X") {
  const auto embedded = state.embed(classical_label);
  return ree_lower(embedded, Cut{cut.a, detail::join(cut.b, Labels{classical_label})});
}

}  // namespace locbound
