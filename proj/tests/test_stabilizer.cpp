#include "helpers.hpp"
#include "locbound/entropy.hpp"
#include "locbound/random.hpp"
#include "locbound/stabilizer.hpp"

#include <gtest/gtest.h>

#include <bit>

using namespace locbound;
using namespace locbound::testing;

namespace {

StabilizerCode five_qubit() { return validate_code({parse_pauli("XZZXI"), parse_pauli("IXZZX"), parse_pauli("XIXZZ"), parse_pauli("ZXIXZ")}); }
StabilizerCode four_two_two() { return validate_code({parse_pauli("XXXX"), parse_pauli("ZZZZ")}); }
StabilizerCode rep3() { return validate_code({parse_pauli("ZZI"), parse_pauli("IZZ")}); }

std::vector<std::size_t> region_of(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> r;
  for (std::size_t q = 0; q < n; ++q) {
    if ((mask >> q) & 1) r.push_back(q);
  }
  return r;
}

// Correctable regions (bit q = qubit q) from the dense-matrix oracle in tests/oracles.
const std::vector<std::uint64_t> kFiveCorrectable{0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 17, 18, 20, 24};
const std::vector<std::uint64_t> kFourTwoTwoCorrectable{0, 1, 2, 4, 8};
const std::vector<std::uint64_t> kRep3Correctable{0};

}  // namespace

TEST(Pauli, ParseWeightSupport) {
  const auto p = parse_pauli("XZZXI");
  EXPECT_EQ(p.n(), 5u);
  EXPECT_EQ(p.weight(), 4u);
  EXPECT_EQ(p.support(), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(p.phase(), 0);
  EXPECT_EQ(parse_pauli("-iYZ").phase(), 3);
}

TEST(Pauli, FormatRoundTrip) {
  for (const char* text : {"+XZZXI", "-IYI", "+iZ", "-iXYZ", "+IIII"}) {
    EXPECT_EQ(parse_pauli(text).to_string(), text);
    EXPECT_EQ(parse_pauli(parse_pauli(text).to_string()), parse_pauli(text));
  }
}

TEST(Pauli, ParseErrors) {
  EXPECT_THROW(parse_pauli("XQZ"), InputError);
  EXPECT_THROW(parse_pauli(""), InputError);
  EXPECT_THROW(parse_pauli("-"), InputError);
  EXPECT_THROW(commutes(parse_pauli("XX"), parse_pauli("Z")), InputError);
}

TEST(Pauli, Commutation) {
  EXPECT_FALSE(commutes(parse_pauli("X"), parse_pauli("Z")));
  EXPECT_TRUE(commutes(parse_pauli("XX"), parse_pauli("ZZ")));
  EXPECT_TRUE(commutes(parse_pauli("XI"), parse_pauli("IZ")));
}

TEST(Pauli, ProductMatchesMatrices) {
  Rng rng(3);
  const char letters[] = "IXYZ";
  for (int t = 0; t < 200; ++t) {
    std::string a, b;
    for (int j = 0; j < 3; ++j) {
      a += letters[rng() % 4];
      b += letters[rng() % 4];
    }
    const auto pa = Pauli(parse_pauli(a).n(), parse_pauli(a).x(), parse_pauli(a).z(), static_cast<int>(rng() % 4));
    const auto pb = parse_pauli(b);
    EXPECT_LT(max_abs_diff((pa * pb).matrix(), pa.matrix() * pb.matrix()), 1e-14) << a << " " << b;
    EXPECT_EQ(pa.commutes(pb), max_abs_diff(pa.matrix() * pb.matrix(), pb.matrix() * pa.matrix()) < 1e-14);
    Vector v = random::unit_vector(8, rng);
    EXPECT_LT((pa.apply(v) - pa.matrix() * v).norm(), 1e-14);
  }
  // Y is Hermitian in letter form; XZ = -iY.
  EXPECT_LT(max_abs_diff(parse_pauli("Y").matrix(), parse_pauli("Y").matrix().adjoint()), 0.0 + 1e-15);
  EXPECT_EQ(parse_pauli("X") * parse_pauli("Z"), parse_pauli("-iY"));
  EXPECT_EQ(parse_pauli("X") * parse_pauli("Y"), parse_pauli("iZ"));
}

TEST(Pauli, QubitZeroIsMostSignificant) {
  const Matrix x0 = parse_pauli("XI").matrix();
  EXPECT_LT(max_abs_diff(x0, linalg::kron(parse_pauli("X").matrix(), Matrix::Identity(2, 2))), 1e-15);
}

TEST(ValidateCode, Examples) {
  const auto five = five_qubit();
  EXPECT_EQ(five.n(), 5u);
  EXPECT_EQ(five.k(), 1u);
  EXPECT_EQ(rep3().k(), 1u);
  EXPECT_EQ(four_two_two().k(), 2u);
}

TEST(ValidateCode, Errors) {
  try {
    validate_code({parse_pauli("Z"), parse_pauli("-Z")});
    FAIL() << "expected -I error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("-I"), std::string::npos);
  }
  try {
    validate_code({parse_pauli("ZZI"), parse_pauli("IZZ"), parse_pauli("ZIZ")});
    FAIL() << "expected dependence error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("dependent"), std::string::npos);
  }
  try {
    validate_code({parse_pauli("XI"), parse_pauli("ZI")});
    FAIL() << "expected commutation error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("commute"), std::string::npos);
  }
  EXPECT_THROW(validate_code({parse_pauli("iZ")}), InputError);
  EXPECT_THROW(validate_code({parse_pauli("ZZ"), parse_pauli("Z")}), InputError);
  EXPECT_THROW(validate_code({}), InputError);
  // -I via a three-term product: (XX)(ZZ) = -YY.
  EXPECT_THROW(validate_code({parse_pauli("XX"), parse_pauli("ZZ"), parse_pauli("YY")}), InputError);
  EXPECT_NO_THROW(validate_code({parse_pauli("XX"), parse_pauli("-YY")}));
}

TEST(ValidateCode, LogicalOperators) {
  for (const auto& code : {five_qubit(), four_two_two(), rep3()}) {
    ASSERT_EQ(code.logical_x().size(), code.k());
    ASSERT_EQ(code.logical_z().size(), code.k());
    for (std::size_t i = 0; i < code.k(); ++i) {
      for (const auto& l : {code.logical_x()[i], code.logical_z()[i]}) {
        EXPECT_TRUE(code.in_centralizer(l.x(), l.z()));
        EXPECT_FALSE(code.in_group_up_to_phase(l));
      }
      for (std::size_t j = 0; j < code.k(); ++j) {
        EXPECT_EQ(code.logical_x()[i].commutes(code.logical_z()[j]), i != j);
        EXPECT_TRUE(code.logical_x()[i].commutes(code.logical_x()[j]));
        EXPECT_TRUE(code.logical_z()[i].commutes(code.logical_z()[j]));
      }
    }
  }
}

TEST(MinDistance, Examples) {
  EXPECT_EQ(min_distance(five_qubit()).distance, 3u);
  EXPECT_EQ(min_distance(four_two_two()).distance, 2u);
  const auto rep = min_distance(rep3());
  EXPECT_EQ(rep.distance, 1u);
  EXPECT_EQ(rep.witness->to_string(), "+ZII");
}

TEST(MinDistance, CapGivesOpenEndedResult) {
  const auto r = min_distance(five_qubit(), 2);
  EXPECT_FALSE(r.distance.has_value());
  EXPECT_EQ(r.lower_bound, 3u);
}

TEST(Correctable, Examples) {
  const auto five = five_qubit();
  EXPECT_TRUE(correctable_region(five, {0, 1}));
  EXPECT_FALSE(correctable_region(five, {0, 1, 2}));
  EXPECT_TRUE(correctable_region(five, {}));
  EXPECT_THROW(correctable_region(five, {7}), InputError);
}

TEST(Correctable, AllSubsetsMatchOracleAndDenseCheck) {
  const std::vector<std::pair<StabilizerCode, std::vector<std::uint64_t>>> cases{
      {five_qubit(), kFiveCorrectable}, {four_two_two(), kFourTwoTwoCorrectable}, {rep3(), kRep3Correctable}};
  for (const auto& [code, expected] : cases) {
    const auto d = *min_distance(code).distance;
    const Matrix proj = code_projector(code);
    std::vector<std::uint64_t> got;
    bool size_d_failure = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << code.n()); ++mask) {
      const auto region = region_of(mask, code.n());
      const bool symbolic = correctable_region(code, region);
      EXPECT_EQ(symbolic, knill_laflamme_check(proj, code.n(), region));
      if (symbolic) got.push_back(mask);
      if (region.size() < d) EXPECT_TRUE(symbolic);
      if (region.size() == d && !symbolic) size_d_failure = true;
    }
    EXPECT_EQ(got, expected);
    EXPECT_TRUE(size_d_failure);
  }
}

TEST(EncodingIsometry, FiveQubitCode) {
  const auto code = five_qubit();
  const Matrix u = encoding_isometry(code);
  EXPECT_EQ(u.cols(), 2);
  EXPECT_LT(max_abs_diff(u.adjoint() * u, Matrix::Identity(2, 2)), 1e-12);
  for (const auto& g : code.generators()) EXPECT_LT(max_abs_diff(g.matrix() * u, u), 1e-10);
  EXPECT_LT(max_abs_diff(code_projector(code) * u, u), 1e-10);
  EXPECT_THROW(encoding_isometry(validate_code({parse_pauli("Z")})), InputError);
}

TEST(EncodingIsometry, EncodedMaxEntangledFiveQubit) {
  const auto code = five_qubit();
  const Matrix u = encoding_isometry(code);
  // (I_R ⊗ U)Φ_RL with R one qubit.
  const Vector phi = max_entangled_state(1, "R", "L").vector();
  const Vector encoded = linalg::kron(Matrix::Identity(2, 2), u) * phi;
  const auto psi = PureState::normalized(RegisterLayout::qubits({"R", "q0", "q1", "q2", "q3", "q4"}), encoded);
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    if (std::popcount(mask) != 2) continue;
    Labels region;
    for (const auto q : region_of(mask, 5)) region.push_back("q" + std::to_string(q));
    EXPECT_NEAR(vn_entropy(psi, region), 2.0, 1e-10);
  }
}

TEST(Syndrome, ProjectorAlgebra) {
  for (const auto& code : {rep3(), five_qubit()}) {
    const auto s = syndrome_projectors(code);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << code.n());
    Matrix sum = Matrix::Zero(dim, dim);
    std::vector<Matrix> ps;
    for (std::uint64_t i = 0; i < s.count(); ++i) {
      ps.push_back(s.projector(i));
      sum += ps.back();
      EXPECT_NEAR(ps.back().trace().real(), static_cast<double>(std::size_t{1} << code.k()), 1e-10);
    }
    EXPECT_LT(max_abs_diff(sum, Matrix::Identity(dim, dim)), 1e-10);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (i != j) EXPECT_LT((ps[i] * ps[j]).cwiseAbs().maxCoeff(), 1e-10);
      }
    }
  }
}

TEST(Correction, Examples) {
  EXPECT_EQ(correction_operator(rep3(), 0), Pauli::identity(3));
  // Syndrome (-1, +1): bit 0 set.
  EXPECT_EQ(correction_operator(rep3(), 0b01).to_string(), "+XII");
  EXPECT_EQ(correction_operator(rep3(), 0b10).to_string(), "+IIX");
  EXPECT_EQ(correction_operator(rep3(), 0b11).to_string(), "+IXI");
}

TEST(Correction, MapsSyndromeSpaceIntoCode) {
  const auto code = five_qubit();
  const auto s = syndrome_projectors(code);
  const Matrix pc = s.code_projector();
  for (std::uint64_t i = 0; i < s.count(); ++i) {
    const Matrix ps = s.projector(i);
    const Matrix p = correction_operator(code, i).matrix();
    EXPECT_LT(max_abs_diff(pc * p * ps, p * ps), 1e-10);
    EXPECT_LE(correction_operator(code, i).weight(), 1u);
  }
}

TEST(CodeFile, ParsesCommentsAndBlanks) {
  const auto gens = parse_code_text("# five qubit\n\nXZZXI\n IXZZX  # second\nXIXZZ\nZXIXZ\n");
  EXPECT_EQ(gens.size(), 4u);
  EXPECT_EQ(validate_code(gens).k(), 1u);
}

TEST(CodeFile, LineNumberedErrors) {
  try {
    parse_code_text("XX\n\nXQ\n", "bad.code");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(std::string(e.what()).rfind("bad.code:3:", 0), 0u);
  }
  EXPECT_THROW(parse_code_text("XX\nXXX\n"), ParseError);
  EXPECT_THROW(parse_code_text("# nothing\n"), ParseError);
  EXPECT_THROW(parse_code_text("XX ZZ\n"), ParseError);
}
