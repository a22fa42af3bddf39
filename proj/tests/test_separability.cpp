#include "helpers.hpp"
#include "locbound/random.hpp"
#include "locbound/separability.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace locbound;
using namespace locbound::testing;

namespace {

constexpr double kH_quarter = 0.811278124459132863909695792039;

const Cut kAB{{"A"}, {"B"}};

DensityMatrix werner(double singlet_weight) {
  const auto singlet = projector({"A", "B"}, ket({0, 1, -1, 0}));
  const Matrix m = singlet_weight * singlet.matrix() + (1 - singlet_weight) * Matrix::Identity(4, 4) / 4.0;
  return DensityMatrix(singlet.layout(), m);
}

bool is_ppt(const DensityMatrix& rho, const Labels& side) {
  return linalg::eigenvalues(partial_transpose(rho, side)).minCoeff() >= -1e-12;
}

}  // namespace

TEST(ReeLower, Examples) {
  EXPECT_NEAR(ree_lower(bell(), kAB), 1.0, 1e-14);
  EXPECT_NEAR(ree_lower(projector({"A", "B"}, ket({1, 1, 1, 1})), kAB), 0.0, 1e-12);
  EXPECT_EQ(ree_lower(DensityMatrix::maximally_mixed(RegisterLayout::qubits({"A", "B"})), kAB), 0.0);
  EXPECT_THROW(ree_lower(bell(), Cut{{"A"}, {}}), InputError);
  EXPECT_THROW(ree_lower(bell(), Cut{{"A"}, {"A"}}), InputError);
}

TEST(ReeUpper, ProductState) {
  const auto r = ree_upper(projector({"A", "B"}, ket({1, 2, 3, 6})), kAB);
  EXPECT_LE(r.value, 1e-6);
}

TEST(ReeUpper, BellPair) {
  const auto b = ree_bracket(bell(), kAB);
  EXPECT_NEAR(b.lower, 1.0, 1e-12);
  EXPECT_NEAR(b.upper, 1.0, 1e-3);
  EXPECT_LE(b.lower, b.upper + 1e-6);
  EXPECT_EQ(b.ensemble.terms.size(), 16u);
  // Explicit witness ½(|00⟩⟨00| + |11⟩⟨11|) closes the sandwich.
  SeparableEnsemble witness{kAB, {{0.5, ket({1, 0}), ket({1, 0})}, {0.5, ket({0, 1}), ket({0, 1})}}};
  EXPECT_NEAR(ensemble_relative_entropy(bell(), witness).value, 1.0, 1e-12);
}

TEST(ReeUpper, SeparableWernerState) {
  const auto rho = werner(0.25);
  ASSERT_TRUE(is_ppt(rho, {"A"}));
  EXPECT_LE(ree_upper(rho, kAB).value, 0.02);
}

TEST(ReeUpper, EntangledWernerStateBracket) {
  const auto rho = werner(0.8);
  EXPECT_FALSE(is_ppt(rho, {"A"}));
  const auto b = ree_bracket(rho, kAB, {4, 500, 1});
  EXPECT_LE(b.lower, b.upper + 1e-6);
  EXPECT_GT(b.upper, 0.1);
}

TEST(ReeBracket, PureSchmidtState) {
  const auto rho = projector({"A", "B"}, ket({std::sqrt(0.75), 0, 0, std::sqrt(0.25)}));
  const auto b = ree_bracket(rho, kAB);
  EXPECT_NEAR(b.lower, kH_quarter, 1e-10);
  EXPECT_NEAR(b.upper, kH_quarter, 1e-3);
}

TEST(ReeUpper, GradientMatchesFiniteDifferences) {
  Rng rng(42);
  const auto rho = random::density(RegisterLayout::qubits({"A", "B"}), rng);
  const detail::ReeObjective obj(rho.matrix(), 2, 2, 16);
  const auto x = detail::random_start(obj, 2, 2, rng);
  std::vector<double> grad(x.size());
  double cost = 0.0;
  ASSERT_TRUE(obj.Evaluate(x.data(), &cost, grad.data()));
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x, xm = x;
    const double h = 1e-6;
    xp[i] += h;
    xm[i] -= h;
    double cp = 0.0, cm = 0.0;
    obj.Evaluate(xp.data(), &cp, nullptr);
    obj.Evaluate(xm.data(), &cm, nullptr);
    worst = std::max(worst, std::abs((cp - cm) / (2 * h) - grad[i]));
  }
  EXPECT_LT(worst, 1e-6);
  const auto d = relative_entropy(rho, obj.ensemble(x.data(), kAB).assemble());
  EXPECT_NEAR(d.value, cost, 1e-10);
}

TEST(ReeUpper, DeterministicAndMonotoneInBudget) {
  Rng rng(7);
  const auto rho = random::density(RegisterLayout::qubits({"A", "B"}), rng);
  const auto r1 = ree_upper(rho, kAB, {2, 200, 99});
  const auto r2 = ree_upper(rho, kAB, {2, 200, 99});
  EXPECT_EQ(r1.value, r2.value);
  const auto r3 = ree_upper(rho, kAB, {5, 200, 99});
  EXPECT_LE(r3.value, r1.value);
}

TEST(ReeUpper, RejectsLargeDimension) {
  const auto rho = DensityMatrix::maximally_mixed(RegisterLayout::qubits({"a", "b", "c", "d", "e", "f", "g"}));
  EXPECT_THROW(ree_upper(rho, Cut{{"a"}, {"b", "c", "d", "e", "f", "g"}}), CapacityError);
}

TEST(ReeUpper, SandwichOnRandomStates) {
  Rng rng(1234);
  int violations = 0;
  for (int i = 0; i < 500; ++i) {
    Cut cut;
    RegisterLayout layout;
    if (i % 10 == 9) {
      layout = RegisterLayout::qubits({"a0", "a1", "b0", "b1"});
      cut = {{"a0", "a1"}, {"b0", "b1"}};
    } else if (i % 10 >= 7) {
      layout = RegisterLayout::qubits({"a0", "b0", "b1"});
      cut = {{"a0"}, {"b0", "b1"}};
    } else {
      layout = RegisterLayout::qubits({"a0", "b0"});
      cut = {{"a0"}, {"b0"}};
    }
    const auto rho = random::density(layout, rng, 1 + i % 3);
    const ReeBudget budget{1, i % 10 == 9 ? 15 : 60, static_cast<std::uint64_t>(i)};
    const auto b = ree_bracket(rho, cut, budget);
    if (b.lower > b.upper + 1e-6) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(ReeUpper, PureStateTightness) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto layout = i % 4 == 3 ? RegisterLayout::qubits({"a0", "b0", "b1"}) : RegisterLayout::qubits({"a0", "b0"});
    const Cut cut = i % 4 == 3 ? Cut{{"a0"}, {"b0", "b1"}} : Cut{{"a0"}, {"b0"}};
    const auto rho = DensityMatrix(random::pure_state(layout, rng));
    const auto b = ree_bracket(rho, cut, {3, 300, 5});
    EXPECT_LE(b.upper - b.lower, 1e-3);
  }
}

TEST(ReeUpper, MonotoneUnderSeparableChannels) {
  Rng rng(19);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random::density(RegisterLayout::qubits({"A", "B"}), rng, 2);
    const auto up = ree_upper(rho, kAB, {2, 300, 3});
    // Separable channel: product Kraus operators K_A^i ⊗ K_B^i.
    const auto ka = random::kraus_channel(2, 2, 2, rng);
    const auto u = random::haar_unitary(2, rng);
    std::vector<std::pair<Matrix, Matrix>> kraus{{ka[0], u}, {ka[1], Matrix::Identity(2, 2)}};
    Matrix out = Matrix::Zero(4, 4);
    for (const auto& [a, b] : kraus) {
      const Matrix k = linalg::kron(a, b);
      out += k * rho.matrix() * k.adjoint();
    }
    const auto image = DensityMatrix::sanitized(rho.layout(), out);
    const auto moved = transport(up.ensemble, kraus);
    const auto d = ensemble_relative_entropy(image, moved);
    ASSERT_FALSE(d.support_violation);
    EXPECT_LE(d.value, up.value + 1e-3);
    EXPECT_LE(ree_lower(image, kAB), d.value + 1e-6);
  }
}

TEST(ReeCq, BranchwiseUpperAndEmbeddedLower) {
  const auto b = bell();
  const auto prod = projector({"A", "B"}, ket({1, 0, 0, 0}));
  const ClassicalQuantumState cq(b.layout(), {{"0", 0.5, b}, {"1", 0.5, prod}});
  const double up = ree_upper_cq(cq, kAB);
  const double low = ree_lower_cq(cq, kAB);
  EXPECT_NEAR(up, 0.5, 1e-3);
  EXPECT_LE(low, up + 1e-6);
  EXPECT_NEAR(low, 0.5, 1e-9);
}
