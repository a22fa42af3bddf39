#include "helpers.hpp"
#include "locbound/entropy.hpp"
#include "locbound/qstate.hpp"
#include "locbound/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace locbound;
using namespace locbound::testing;

TEST(RegisterLayout, RejectsDuplicateLabels) {
  EXPECT_THROW(RegisterLayout::qubits({"a", "a"}), InputError);
}

TEST(RegisterLayout, RejectsNonPowerOfTwoQuantumRegister) {
  EXPECT_THROW(RegisterLayout({Register{"q", RegisterKind::quantum, 3}}), InputError);
  EXPECT_NO_THROW(RegisterLayout({Register{"x", RegisterKind::classical, 3}}));
}

TEST(RegisterLayout, SelectKeepsLayoutOrder) {
  const auto layout = RegisterLayout::qubits({"a", "b", "c"});
  EXPECT_EQ(layout.select({"c", "a"}).labels(), (Labels{"a", "c"}));
  EXPECT_EQ(layout.complement({"b"}), (Labels{"a", "c"}));
  EXPECT_THROW(layout.select({"d"}), InputError);
}

TEST(DensityMatrix, ChecksInvariants) {
  const auto layout = RegisterLayout::qubits({"a"});
  Matrix m(2, 2);
  m << 0.5, 0.0, 0.0, 0.6;
  EXPECT_THROW(DensityMatrix(layout, m), InputError);
  m << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityMatrix(layout, m), InputError);
  m << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(DensityMatrix(layout, m), InputError);
  EXPECT_THROW(DensityMatrix(layout, Matrix::Identity(4, 4) / 4.0), InputError);
}

TEST(TensorProduct, MaximallyMixedPair) {
  const auto a = DensityMatrix::maximally_mixed(RegisterLayout::qubits({"a"}));
  const auto b = DensityMatrix::maximally_mixed(RegisterLayout::qubits({"b"}));
  const auto ab = tensor_product(a, b);
  EXPECT_LT(max_abs_diff(ab.matrix(), Matrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_EQ(ab.layout().labels(), (Labels{"a", "b"}));
}

TEST(TensorProduct, BasisStates) {
  const auto ab = tensor_product(projector({"a"}, ket({1, 0})), projector({"b"}, ket({0, 1})));
  EXPECT_DOUBLE_EQ(ab.matrix()(1, 1).real(), 1.0);
  EXPECT_NEAR(ab.matrix().cwiseAbs().sum(), 1.0, 1e-15);
}

TEST(TensorProduct, LabelCollision) {
  const auto a = DensityMatrix::maximally_mixed(RegisterLayout::qubits({"a"}));
  EXPECT_THROW(tensor_product(a, a), InputError);
}

TEST(TensorProduct, TraceIsMultiplicative) {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto a = random::density(RegisterLayout::qubits({"a0", "a1"}), rng);
    const auto b = random::density(RegisterLayout::qubits({"b0", "b1"}), rng);
    EXPECT_NEAR(linalg::kron(a.matrix(), b.matrix()).trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(tensor_product(a, b).matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, BellPairGivesMaximallyMixed) {
  const auto r = partial_trace(bell(), {"B"});
  EXPECT_LT(max_abs_diff(r.matrix(), Matrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_EQ(r.layout().labels(), (Labels{"A"}));
}

TEST(PartialTrace, GhzDropLast) {
  const auto ghz = projector({"q0", "q1", "q2"}, ket({1, 0, 0, 0, 0, 0, 0, 1}));
  const auto r = partial_trace(ghz, {"q2"});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(r.matrix(), expected), 1e-15);
}

TEST(PartialTrace, UnknownLabel) { EXPECT_THROW(partial_trace(bell(), {"C"}), InputError); }

TEST(PartialTrace, ProductRecoversFactor) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto a = random::density(RegisterLayout::qubits({"a0", "a1"}), rng);
    const auto b = random::density(RegisterLayout::qubits({"b0"}), rng);
    EXPECT_LT(max_abs_diff(partial_trace(tensor_product(a, b), {"b0"}).matrix(), a.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(tensor_product(b, a), {"b0"}).matrix(), a.matrix()), 1e-12);
  }
}

TEST(PartialTrace, MiddleRegisterMatchesPureReduction) {
  Rng rng(8);
  const auto layout = RegisterLayout::qubits({"a", "b", "c", "d"});
  for (int i = 0; i < 10; ++i) {
    const auto psi = random::pure_state(layout, rng);
    const auto full = DensityMatrix(psi);
    const auto r1 = reduced_state(full, {"d", "b"});
    const auto r2 = reduced_state(psi, {"b", "d"});
    EXPECT_LT(max_abs_diff(r1.matrix(), r2.matrix()), 1e-12);
  }
}

TEST(Permute, RoundTrip) {
  Rng rng(3);
  const auto rho = random::density(RegisterLayout::qubits({"a", "b", "c"}), rng);
  const auto p = permute(rho, {"c", "a", "b"});
  EXPECT_EQ(p.layout().labels(), (Labels{"c", "a", "b"}));
  EXPECT_LT(max_abs_diff(permute(p, {"a", "b", "c"}).matrix(), rho.matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(reduced_state(p, {"a"}).matrix(), reduced_state(rho, {"a"}).matrix()), 1e-12);
}

TEST(Fidelity, Examples) {
  Rng rng(1);
  const auto rho = random::density(RegisterLayout::qubits({"a", "b"}), rng);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
  EXPECT_NEAR(fidelity(projector({"a"}, ket({1, 0})), projector({"a"}, ket({0, 1}))), 0.0, 1e-12);
  const auto mixed = DensityMatrix::maximally_mixed(RegisterLayout::qubits({"a"}));
  EXPECT_NEAR(fidelity(projector({"a"}, ket({1, 0})), mixed), 0.5, 1e-12);
  EXPECT_NEAR(fidelity(qubit_state({"a"}, ket({1, 0})), mixed), 0.5, 1e-15);
}

TEST(Fidelity, LayoutMismatch) {
  EXPECT_THROW(fidelity(projector({"a"}, ket({1, 0})), projector({"b"}, ket({1, 0}))), InputError);
}

TEST(TraceDistance, Examples) {
  const auto zero = projector({"a"}, ket({1, 0}));
  const auto plus = projector({"a"}, ket({1, 1}));
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, projector({"a"}, ket({0, 1}))), 2.0, 1e-12);
  EXPECT_NEAR(trace_distance(zero, plus), 1.4142135623730951, 1e-12);
}

TEST(FuchsVanDeGraaf, RandomPairs) {
  Rng rng(2024);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t qubits = 1 + trial % 4;
    Labels labels;
    for (std::size_t q = 0; q < qubits; ++q) labels.push_back("q" + std::to_string(q));
    const auto layout = RegisterLayout::qubits(labels);
    const auto rho = random::density(layout, rng, 1 + trial % 3);
    const auto sigma = random::density(layout, rng);
    const double f = fidelity(rho, sigma);
    const double t = trace_distance(rho, sigma);
    if (2 * (1 - std::sqrt(f)) > t + 1e-9 || t > 2 * std::sqrt(1 - f) + 1e-9) ++violations;
    const auto xi = random::pure_state(layout, rng);
    const double fp = fidelity(xi, sigma);
    const double tp = trace_distance(DensityMatrix(xi), sigma);
    if (2 * (1 - fp) > tp + 1e-9 || std::abs(fp - fidelity(DensityMatrix(xi), sigma)) > 1e-8) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(Purify, MaximallyMixedQubit) {
  const auto rho = DensityMatrix::maximally_mixed(RegisterLayout::qubits({"a"}));
  const auto psi = purify(rho, "R");
  EXPECT_EQ(psi.layout().dim_of({"R"}), 2u);
  EXPECT_NEAR(vn_entropy(psi, {"a"}), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(partial_trace(DensityMatrix(psi), {"R"}), rho), 1.0, 1e-10);
}

TEST(Purify, PureInputHasTrivialReference) {
  const auto rho = projector({"a", "b"}, ket({1, 0, 0, 1}));
  const auto psi = purify(rho, "R");
  EXPECT_EQ(psi.layout().dim_of({"R"}), 1u);
  EXPECT_NEAR(fidelity(partial_trace(DensityMatrix(psi), {"R"}), rho), 1.0, 1e-10);
}

TEST(Purify, DiagonalState) {
  const auto rho = diag_state({"a"}, {0.75, 0.25});
  const auto psi = purify(rho, "R");
  // Schmidt coefficients √¾, √¼ up to local unitaries.
  const auto r = reduced_state(psi, {"R"});
  const RealVector ev = linalg::eigenvalues(r.matrix());
  EXPECT_NEAR(ev(0), 0.25, 1e-12);
  EXPECT_NEAR(ev(1), 0.75, 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(DensityMatrix(psi), {"R"}).matrix(), rho.matrix()), 1e-10);
}

TEST(Purify, RandomTraceBack) {
  Rng rng(77);
  for (int i = 0; i < 30; ++i) {
    const auto rho = random::density(RegisterLayout::qubits({"a", "b"}), rng, 1 + i % 4);
    const auto psi = purify(rho, "R");
    EXPECT_LE(psi.layout().dim_of({"R"}), 4u);
    const auto back = reduced_state(psi, {"a", "b"});
    EXPECT_NEAR(fidelity(back, rho), 1.0, 1e-10);
    EXPECT_LT(max_abs_diff(back.matrix(), rho.matrix()), 1e-10);
  }
}

TEST(MaxEntangled, OneQubit) {
  const auto phi = max_entangled_state(1, "R", "L");
  const double s = 1 / std::sqrt(2.0);
  EXPECT_LT((phi.vector() - ket({s, 0, 0, s})).norm(), 1e-15);
  EXPECT_NEAR(vn_entropy(phi, {"R"}), 1.0, 1e-12);
}

TEST(MaxEntangled, TwoQubitsReduced) {
  const auto phi = max_entangled_state(2, "R", "L");
  EXPECT_LT(max_abs_diff(reduced_state(phi, {"R"}).matrix(), Matrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_NEAR(vn_entropy(phi, {"L"}), 2.0, 1e-12);
  EXPECT_THROW(max_entangled_state(0, "R", "L"), InputError);
}

TEST(ClassicalQuantum, WeightsAndMarginal) {
  const auto zero = projector({"a"}, ket({1, 0}));
  const auto one = projector({"a"}, ket({0, 1}));
  const ClassicalQuantumState cq(zero.layout(), {{"0", 0.5, zero}, {"1", 0.5, one}});
  EXPECT_LT(max_abs_diff(cq.marginal().matrix(), Matrix::Identity(2, 2) / 2.0), 1e-15);
  const auto emb = cq.embed("X");
  EXPECT_EQ(emb.layout().labels(), (Labels{"a", "X"}));
  EXPECT_NEAR(vn_entropy(emb, {"X"}), 1.0, 1e-12);
  EXPECT_THROW(ClassicalQuantumState(zero.layout(), {{"0", 0.6, zero}, {"1", 0.5, one}}), InputError);
}
