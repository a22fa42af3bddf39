#pragma once

#include "locbound/qstate.hpp"

#include <cmath>
#include <initializer_list>

namespace locbound::testing {

inline Vector ket(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return v;
}

inline PureState qubit_state(const Labels& labels, const Vector& v) {
  return PureState::normalized(RegisterLayout::qubits(labels), v);
}

inline DensityMatrix projector(const Labels& labels, const Vector& v) {
  return DensityMatrix(qubit_state(labels, v));
}

inline DensityMatrix bell(const std::string& a = "A", const std::string& b = "B") {
  return projector({a, b}, ket({1, 0, 0, 1}));
}

inline DensityMatrix diag_state(const Labels& labels, std::initializer_list<double> probs) {
  const auto layout = RegisterLayout::qubits(labels);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(layout.total_dim()), static_cast<Eigen::Index>(layout.total_dim()));
  Eigen::Index i = 0;
  for (auto p : probs) {
    m(i, i) = p;
    ++i;
  }
  return DensityMatrix(layout, m);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace locbound::testing
