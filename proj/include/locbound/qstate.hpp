#pragma once

// Register-labelled quantum states.
//
// A RegisterLayout is an ordered list of named tensor factors; the order fixes the
// Kronecker order (first register most significant). Every label-addressed
// operation resolves labels against the layout and permutes internally, so callers
// never reason about index order.

#include "locbound/error.hpp"
#include "locbound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace locbound {

using Labels = std::vector<std::string>;

inline constexpr double kStateTolerance = 1e-10;

enum class RegisterKind { quantum, classical };

struct Register {
  std::string label;
  RegisterKind kind = RegisterKind::quantum;
  std::size_t dim = 2;

  friend bool operator==(const Register&, const Register&) = default;
};

class RegisterLayout {
 public:
  RegisterLayout() = default;

  explicit RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
    for (std::size_t i = 0; i < registers_.size(); ++i) {
      const auto& r = registers_[i];
      if (r.label.empty()) throw InputError("register label must be non-empty");
      if (r.dim == 0) throw InputError("register '" + r.label + "' has dimension 0");
      if (r.kind == RegisterKind::quantum && !linalg::is_power_of_two(r.dim)) {
        throw InputError("quantum register '" + r.label + "' must have power-of-two dimension");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (registers_[j].label == r.label) throw InputError("duplicate register label '" + r.label + "'");
      }
    }
  }

  /// One qubit register per label.
  static RegisterLayout qubits(const Labels& labels) {
    std::vector<Register> regs;
    regs.reserve(labels.size());
    for (const auto& l : labels) regs.push_back({l, RegisterKind::quantum, 2});
    return RegisterLayout(std::move(regs));
  }

  const std::vector<Register>& registers() const noexcept { return registers_; }
  std::size_t size() const noexcept { return registers_.size(); }

  std::size_t total_dim() const noexcept {
    std::size_t d = 1;
    for (const auto& r : registers_) d *= r.dim;
    return d;
  }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    out.reserve(registers_.size());
    for (const auto& r : registers_) out.push_back(r.dim);
    return out;
  }

  Labels labels() const {
    Labels out;
    out.reserve(registers_.size());
    for (const auto& r : registers_) out.push_back(r.label);
    return out;
  }

  bool contains(std::string_view label) const noexcept {
    return std::any_of(registers_.begin(), registers_.end(),
                       [&](const Register& r) { return r.label == label; });
  }

  std::size_t position(std::string_view label) const {
    for (std::size_t i = 0; i < registers_.size(); ++i) {
      if (registers_[i].label == label) return i;
    }
    throw InputError("unknown register label '" + std::string(label) + "'");
  }

  /// Positions of `labels` in the given order; rejects unknown and repeated labels.
  std::vector<std::size_t> positions(const Labels& labels) const {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
      const auto p = position(l);
      if (std::find(out.begin(), out.end(), p) != out.end()) {
        throw InputError("register label '" + l + "' listed twice");
      }
      out.push_back(p);
    }
    return out;
  }

  /// The registers named in `labels`, kept in layout order.
  RegisterLayout select(const Labels& labels) const {
    auto pos = positions(labels);
    std::sort(pos.begin(), pos.end());
    std::vector<Register> regs;
    for (auto p : pos) regs.push_back(registers_[p]);
    return RegisterLayout(std::move(regs));
  }

  /// Labels not in `labels`, in layout order.
  Labels complement(const Labels& labels) const {
    positions(labels);  // validates
    Labels out;
    for (const auto& r : registers_) {
      if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) out.push_back(r.label);
    }
    return out;
  }

  RegisterLayout concat(const RegisterLayout& other) const {
    auto regs = registers_;
    regs.insert(regs.end(), other.registers_.begin(), other.registers_.end());
    return RegisterLayout(std::move(regs));
  }

  std::size_t dim_of(const Labels& labels) const {
    std::size_t d = 1;
    for (auto p : positions(labels)) d *= registers_[p].dim;
    return d;
  }

  /// log2 of the dimension of the quantum registers among `labels`.
  std::size_t qubit_count(const Labels& labels) const {
    std::size_t q = 0;
    for (auto p : positions(labels)) {
      if (registers_[p].kind == RegisterKind::quantum) q += linalg::log2_exact(registers_[p].dim);
    }
    return q;
  }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::vector<Register> registers_;
};

class PureState {
 public:
  PureState(RegisterLayout layout, Vector vector) : layout_(std::move(layout)), vector_(std::move(vector)) {
    if (static_cast<std::size_t>(vector_.size()) != layout_.total_dim()) {
      throw InputError("state vector size does not match layout dimension");
    }
    if (std::abs(vector_.norm() - 1.0) > kStateTolerance) throw InputError("state vector is not normalized");
  }

  static PureState normalized(RegisterLayout layout, Vector vector) {
    const double norm = vector.norm();
    if (norm == 0.0) throw InputError("cannot normalize the zero vector");
    vector /= norm;
    return PureState(std::move(layout), std::move(vector));
  }

  static PureState basis(RegisterLayout layout, std::size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    if (index >= layout.total_dim()) throw InputError("basis index out of range");
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(layout), std::move(v));
  }

  const RegisterLayout& layout() const noexcept { return layout_; }
  const Vector& vector() const noexcept { return vector_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(vector_.size()); }

 private:
  RegisterLayout layout_;
  Vector vector_;
};

class DensityMatrix {
 public:
  /// Checked construction: Hermitian, unit trace and PSD, each to 1e-10.
  DensityMatrix(RegisterLayout layout, Matrix matrix) : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    check_shape();
    if (linalg::hermiticity_defect(matrix_) > kStateTolerance) throw InputError("density matrix is not Hermitian");
    if (std::abs(matrix_.trace().real() - 1.0) > kStateTolerance) throw InputError("density matrix trace is not 1");
    if (matrix_.rows() > 0 && linalg::eigenvalues(matrix_).minCoeff() < -kStateTolerance) {
      throw InputError("density matrix has a negative eigenvalue");
    }
    matrix_ = linalg::hermitian_part(matrix_);
  }

  explicit DensityMatrix(const PureState& psi)
      : layout_(psi.layout()), matrix_(psi.vector() * psi.vector().adjoint()) {}

  /// Channel-output construction: symmetrizes and renormalizes the trace without a
  /// spectral check.
  static DensityMatrix sanitized(RegisterLayout layout, const Matrix& matrix) {
    Matrix m = linalg::hermitian_part(matrix);
    const double tr = m.trace().real();
    if (!(tr > 0.0)) throw InputError("operator has non-positive trace");
    m /= tr;
    return DensityMatrix(Unchecked{}, std::move(layout), std::move(m));
  }

  static DensityMatrix maximally_mixed(RegisterLayout layout) {
    const auto d = static_cast<Eigen::Index>(layout.total_dim());
    Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
    return DensityMatrix(Unchecked{}, std::move(layout), std::move(m));
  }

  const RegisterLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, RegisterLayout layout, Matrix matrix)
      : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    check_shape();
  }

  void check_shape() const {
    const auto d = static_cast<Eigen::Index>(layout_.total_dim());
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw InputError("matrix shape does not match layout dimension");
    }
  }

  RegisterLayout layout_;
  Matrix matrix_;
};

struct Branch {
  std::string label;
  double weight = 0.0;
  DensityMatrix state;
};

/// Σ_s q_s ρ_s ⊗ |s⟩⟨s|_X with the classical register kept as a list of labelled branches.
class ClassicalQuantumState {
 public:
  ClassicalQuantumState(RegisterLayout layout, std::vector<Branch> branches)
      : layout_(std::move(layout)), branches_(std::move(branches)) {
    double total = 0.0;
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      const auto& b = branches_[i];
      if (!(b.weight >= 0.0)) throw InputError("branch weight must be non-negative");
      if (!(b.state.layout() == layout_)) throw InputError("branch layout differs from state layout");
      for (std::size_t j = 0; j < i; ++j) {
        if (branches_[j].label == b.label) throw InputError("duplicate branch label '" + b.label + "'");
      }
      total += b.weight;
    }
    if (branches_.empty() || std::abs(total - 1.0) > kStateTolerance) {
      throw InputError("branch weights must sum to 1");
    }
  }

  explicit ClassicalQuantumState(DensityMatrix rho, std::string label = {})
      : ClassicalQuantumState(rho.layout(), {Branch{std::move(label), 1.0, rho}}) {}

  const RegisterLayout& layout() const noexcept { return layout_; }
  const std::vector<Branch>& branches() const noexcept { return branches_; }

  /// tr_X: Σ_s q_s ρ_s.
  DensityMatrix marginal() const {
    const auto d = static_cast<Eigen::Index>(layout_.total_dim());
    Matrix m = Matrix::Zero(d, d);
    for (const auto& b : branches_) m += b.weight * b.state.matrix();
    return DensityMatrix::sanitized(layout_, m);
  }

  /// Dense block-diagonal embedding with a classical register appended last.
  DensityMatrix embed(const std::string& classical_label = "X") const {
    const auto d = static_cast<Eigen::Index>(layout_.total_dim());
    const auto nb = static_cast<Eigen::Index>(branches_.size());
    Matrix m = Matrix::Zero(d * nb, d * nb);
    // Classical register is last, so branch s occupies the stride-nb sub-lattice s.
    for (Eigen::Index s = 0; s < nb; ++s) {
      const Matrix block = branches_[static_cast<std::size_t>(s)].weight *
                           branches_[static_cast<std::size_t>(s)].state.matrix();
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i * nb + s, j * nb + s) = block(i, j);
      }
    }
    auto layout = layout_.concat(RegisterLayout(
        {Register{classical_label, RegisterKind::classical, static_cast<std::size_t>(nb)}}));
    return DensityMatrix::sanitized(std::move(layout), m);
  }

 private:
  RegisterLayout layout_;
  std::vector<Branch> branches_;
};

namespace detail {

inline std::vector<Eigen::Index> permutation_map(const RegisterLayout& layout, const std::vector<std::size_t>& order) {
  // new index -> old index, where the new layout lists registers `order` of the old one.
  const auto dims = layout.dims();
  const auto old_strides = linalg::strides_of(dims);
  const auto total = layout.total_dim();
  std::vector<Eigen::Index> map(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    std::size_t old = 0;
    for (std::size_t i = order.size(); i-- > 0;) {
      const auto d = dims[order[i]];
      old += (rest % d) * old_strides[order[i]];
      rest /= d;
    }
    map[idx] = static_cast<Eigen::Index>(old);
  }
  return map;
}

inline std::vector<std::size_t> sorted_positions(const RegisterLayout& layout, const Labels& labels) {
  auto pos = layout.positions(labels);
  std::sort(pos.begin(), pos.end());
  return pos;
}

}  // namespace detail

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  auto layout = a.layout().concat(b.layout());
  return DensityMatrix::sanitized(std::move(layout), linalg::kron(a.matrix(), b.matrix()));
}

inline PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState::normalized(a.layout().concat(b.layout()), linalg::kron(a.vector(), b.vector()));
}

/// Reduced state on `keep` (result keeps layout order).
inline DensityMatrix reduced_state(const DensityMatrix& rho, const Labels& keep) {
  const auto pos = detail::sorted_positions(rho.layout(), keep);
  const auto ix = linalg::local_indexing(rho.layout().dims(), pos);
  const auto d = static_cast<Eigen::Index>(ix.offsets.size());
  Matrix out = Matrix::Zero(d, d);
  std::vector<Eigen::Index> rows(ix.offsets.size());
  for (auto base : ix.bases) {
    for (Eigen::Index l = 0; l < d; ++l) rows[l] = base + ix.offsets[l];
    out += rho.matrix()(rows, rows);
  }
  return DensityMatrix::sanitized(rho.layout().select(keep), out);
}

inline DensityMatrix reduced_state(const PureState& psi, const Labels& keep) {
  const auto pos = detail::sorted_positions(psi.layout(), keep);
  const auto ix = linalg::local_indexing(psi.layout().dims(), pos);
  const auto d = static_cast<Eigen::Index>(ix.offsets.size());
  Matrix amplitudes(d, static_cast<Eigen::Index>(ix.bases.size()));
  for (std::size_t b = 0; b < ix.bases.size(); ++b) {
    for (Eigen::Index l = 0; l < d; ++l) {
      amplitudes(l, static_cast<Eigen::Index>(b)) = psi.vector()(ix.bases[b] + ix.offsets[l]);
    }
  }
  return DensityMatrix::sanitized(psi.layout().select(keep), amplitudes * amplitudes.adjoint());
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& drop) {
  return reduced_state(rho, rho.layout().complement(drop));
}

/// Reorders the registers of `rho` to `order` (must list every register once).
inline DensityMatrix permute(const DensityMatrix& rho, const Labels& order) {
  if (order.size() != rho.layout().size()) throw InputError("permutation must list every register");
  const auto pos = rho.layout().positions(order);
  const auto map = detail::permutation_map(rho.layout(), pos);
  std::vector<Register> regs;
  for (auto p : pos) regs.push_back(rho.layout().registers()[p]);
  return DensityMatrix::sanitized(RegisterLayout(std::move(regs)), rho.matrix()(map, map));
}

inline PureState permute(const PureState& psi, const Labels& order) {
  if (order.size() != psi.layout().size()) throw InputError("permutation must list every register");
  const auto pos = psi.layout().positions(order);
  const auto map = detail::permutation_map(psi.layout(), pos);
  std::vector<Register> regs;
  for (auto p : pos) regs.push_back(psi.layout().registers()[p]);
  Vector v = psi.vector()(map);
  return PureState::normalized(RegisterLayout(std::move(regs)), std::move(v));
}

/// Partial transpose on the registers `labels`.
inline Matrix partial_transpose(const DensityMatrix& rho, const Labels& labels) {
  const auto dims = rho.layout().dims();
  const auto strides = linalg::strides_of(dims);
  const auto pos = rho.layout().positions(labels);
  const auto total = static_cast<Eigen::Index>(rho.dim());
  Matrix out(total, total);
  for (Eigen::Index i = 0; i < total; ++i) {
    for (Eigen::Index j = 0; j < total; ++j) {
      auto ii = static_cast<std::size_t>(i);
      auto jj = static_cast<std::size_t>(j);
      for (auto p : pos) {
        const auto di = (ii / strides[p]) % dims[p];
        const auto dj = (jj / strides[p]) % dims[p];
        ii = ii - di * strides[p] + dj * strides[p];
        jj = jj - dj * strides[p] + di * strides[p];
      }
      out(static_cast<Eigen::Index>(ii), static_cast<Eigen::Index>(jj)) = rho.matrix()(i, j);
    }
  }
  return out;
}

inline void require_same_layout(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.layout() == b.layout())) throw InputError("states have different layouts");
}

/// Uhlmann fidelity, squared convention: (tr √(√ρ σ √ρ))².
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_layout(rho, sigma);
  // Nuclear norm of √ρ√σ; singular values avoid the √(round-off) bias of taking
  // square roots of tiny eigenvalues of √ρ σ √ρ.
  const Matrix prod = linalg::psd_sqrt(rho.matrix()) * linalg::psd_sqrt(sigma.matrix());
  const double root_sum = Eigen::JacobiSVD<Matrix>(prod).singularValues().sum();
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

/// ⟨ξ|ρ|ξ⟩, the fidelity against a pure state.
inline double fidelity(const PureState& xi, const DensityMatrix& rho) {
  if (!(xi.layout() == rho.layout())) throw InputError("states have different layouts");
  const Complex v = xi.vector().dot(rho.matrix() * xi.vector());
  return std::clamp(v.real(), 0.0, 1.0);
}

/// Trace norm ‖ρ − σ‖₁ (ranges over [0, 2]).
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_layout(rho, sigma);
  return linalg::trace_norm_hermitian(rho.matrix() - sigma.matrix());
}

/// Purification on `reference_label` ⊗ layout. The reference register is the smallest
/// power-of-two dimension covering the rank of ρ.
inline PureState purify(const DensityMatrix& rho, const std::string& reference_label) {
  if (rho.layout().contains(reference_label)) {
    throw InputError("reference label '" + reference_label + "' already in layout");
  }
  const auto es = linalg::eigh(rho.matrix());
  const RealVector& ev = es.eigenvalues();
  const auto d = ev.size();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = d; i-- > 0;) {
    if (ev(i) > 1e-12) support.push_back(i);  // descending eigenvalue order
  }
  if (support.empty()) support.push_back(d - 1);
  std::size_t ref_dim = 1;
  while (ref_dim < support.size()) ref_dim *= 2;

  const auto rd = static_cast<Eigen::Index>(ref_dim);
  Vector psi = Vector::Zero(rd * d);
  for (std::size_t r = 0; r < support.size(); ++r) {
    const double amp = std::sqrt(std::max(ev(support[r]), 0.0));
    psi.segment(static_cast<Eigen::Index>(r) * d, d) = amp * es.eigenvectors().col(support[r]);
  }
  RegisterLayout ref({Register{reference_label, RegisterKind::quantum, ref_dim}});
  return PureState::normalized(ref.concat(rho.layout()), std::move(psi));
}

/// (1/√2^k) Σ_i |i⟩_R |i⟩_L with R and L single registers of dimension 2^k.
inline PureState max_entangled_state(std::size_t k, const std::string& r_label, const std::string& l_label) {
  if (k == 0) throw InputError("maximally entangled state needs k >= 1");
  if (k > 20) throw CapacityError("maximally entangled state too large");
  const std::size_t dim = std::size_t{1} << k;
  RegisterLayout layout({Register{r_label, RegisterKind::quantum, dim}, Register{l_label, RegisterKind::quantum, dim}});
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim * dim));
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i * dim + i)) = amp;
  return PureState(std::move(layout), std::move(v));
}

}  // namespace locbound
