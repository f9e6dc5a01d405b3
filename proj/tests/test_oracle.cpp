#include <gtest/gtest.h>

#include "dequant/error.hpp"
#include "dequant/oracle.hpp"
#include "test_support.hpp"

using namespace dequant;
using namespace testing_support;

namespace {

BooleanFunction table(const std::string& bits) { return parse_truth_table(bits); }

// Reference classification: count ones directly.
FunctionKind reference_kind(const BooleanFunction& f) {
  std::size_t ones = 0;
  for (std::size_t x = 0; x < f.size(); ++x) ones += f(x) ? 1 : 0;
  if (ones == 0 || ones == f.size()) return FunctionKind::Constant;
  return 2 * ones == f.size() ? FunctionKind::Balanced : FunctionKind::Invalid;
}

}  // namespace

TEST(Classify, TableExamples) {
  EXPECT_EQ(classify(table("0011")).kind, FunctionKind::Balanced);
  EXPECT_EQ(classify(table("1111")).kind, FunctionKind::Constant);
  EXPECT_EQ(classify(table("1110")).kind, FunctionKind::Invalid);
  EXPECT_EQ(classify(table("00011110")).kind, FunctionKind::Balanced);
  EXPECT_EQ(classify(table("00011110")).ones_count, 4u);
}

TEST(Classify, AgreesWithCountingOracleExhaustively) {
  for (unsigned n = 1; n <= 4; ++n) {
    std::size_t valid = 0;
    for (const auto& f : all_functions(n)) {
      ASSERT_EQ(classify(f).kind, reference_kind(f)) << f.to_string();
      valid += is_valid(f) ? 1 : 0;
    }
    const std::size_t expected[] = {4, 8, 72, 12872};
    EXPECT_EQ(valid, expected[n - 1]);
  }
}

TEST(Classify, TwoBitFunctionsSplitTwoSixEight) {
  int constant = 0, balanced = 0, invalid = 0;
  for (const auto& f : all_functions(2)) {
    switch (classify(f).kind) {
      case FunctionKind::Constant: ++constant; break;
      case FunctionKind::Balanced: ++balanced; break;
      case FunctionKind::Invalid: ++invalid; break;
    }
  }
  EXPECT_EQ(constant, 2);
  EXPECT_EQ(balanced, 6);
  EXPECT_EQ(invalid, 8);
}

TEST(BooleanFunction, FromBitsIsMostSignificantFirst) {
  EXPECT_EQ(BooleanFunction::from_bits(2, 0b0011).to_string(), "0011");
  EXPECT_EQ(BooleanFunction::from_bits(1, 0b10).to_string(), "10");
  EXPECT_EQ(BooleanFunction::constant(3, true).to_string(), "11111111");
}

TEST(BooleanFunction, RejectsBadShapes) {
  EXPECT_THROW(BooleanFunction(0, {}), InvalidArgument);
  EXPECT_THROW(BooleanFunction(2, {0, 1, 1}), InvalidArgument);
  EXPECT_THROW(BooleanFunction(1, {0, 2}), InvalidArgument);
}

TEST(Negate, Examples) {
  EXPECT_EQ(negate(table("0011")), table("1100"));
  EXPECT_EQ(negate(table("0000")), table("1111"));
}

TEST(Negate, InvolutionAndClassPreserved) {
  for (const auto& f : all_functions(3)) {
    EXPECT_EQ(negate(negate(f)), f);
    EXPECT_EQ(classify(negate(f)).kind, classify(f).kind);
  }
}

TEST(PhaseOracle, BalancedOnPlusPlus) {
  const auto s = apply_phase_oracle(table("0011"), hadamard_all(make_basis_state(2, 0)));
  const Complex expected[] = {0.5, 0.5, -0.5, -0.5};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s.amplitude(i), expected[i]);
  EXPECT_TRUE(s.is_exact_sign());
}

TEST(PhaseOracle, ConstantZeroLeavesStateUnchanged) {
  std::mt19937_64 rng(21);
  const auto s = random_state(rng, 2);
  const auto out = apply_phase_oracle(table("0000"), s);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out.amplitude(i), s.amplitude(i));
}

TEST(PhaseOracle, EntangledExampleSigns) {
  const auto s = apply_phase_oracle(table("00011110"), hadamard_all(make_basis_state(3, 0)));
  const std::int8_t expected[] = {1, 1, 1, -1, -1, -1, -1, 1};
  ASSERT_TRUE(s.is_exact_sign());
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(s.signs()[i], expected[i]);
  EXPECT_EQ(s.sign_scale(), std::pow(2.0, -1.5));
}

TEST(PhaseOracle, ArityMismatchThrows) {
  EXPECT_THROW(apply_phase_oracle(table("0011"), make_basis_state(3, 0)), InvalidArgument);
}

TEST(XorOracle, FlipsAncillaWhenFIsOne) {
  // |1>|0> -> |1>|1> for f = 01; index = (x << 1) | y.
  const auto out = apply_xor_oracle(table("01"), make_basis_state(2, 0b10));
  EXPECT_EQ(out.amplitude(0b11), Complex(1.0));
}

TEST(XorOracle, ConstantZeroIsIdentity) {
  std::mt19937_64 rng(22);
  const auto s = random_state(rng, 2);
  const auto out = apply_xor_oracle(table("00"), s);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out.amplitude(i), s.amplitude(i));
}

TEST(XorOracle, MatchesReferencePermutation) {
  std::mt19937_64 rng(23);
  for (unsigned n = 1; n <= 4; ++n) {
    const auto f = BooleanFunction::from_bits(n, rng());
    const auto s = random_state(rng, n + 1);
    const auto out = apply_xor_oracle(f, s);
    for (std::size_t x = 0; x < f.size(); ++x) {
      for (std::size_t y = 0; y < 2; ++y) {
        EXPECT_EQ(out.amplitude((x << 1) | (y ^ (f(x) ? 1 : 0))), s.amplitude((x << 1) | y));
      }
    }
  }
}

TEST(XorOracle, PhaseKickbackForEveryBasisInput) {
  const auto minus = hadamard_all(make_basis_state(1, 1));
  for (unsigned n = 1; n <= 3; ++n) {
    for (const auto& f : all_functions(n)) {
      for (std::size_t x = 0; x < f.size(); ++x) {
        const auto out = apply_xor_oracle(f, tensor(make_basis_state(n, x), minus));
        const double sign = f(x) ? -1.0 : 1.0;
        const auto expected = tensor(make_basis_state(n, x), minus);
        for (std::size_t i = 0; i < out.dimension(); ++i) {
          ASSERT_NEAR(std::abs(out.amplitude(i) - sign * expected.amplitude(i)), 0.0, 1e-15);
        }
      }
    }
  }
}

TEST(XorOracle, PhaseEquivalenceOnRandomStates) {
  std::mt19937_64 rng(24);
  const auto minus = hadamard_all(make_basis_state(1, 1));
  for (unsigned n = 1; n <= 6; ++n) {
    for (int t = 0; t < 20; ++t) {
      const auto f = BooleanFunction::from_bits(n, rng());
      const auto s = random_state(rng, n);
      const auto a = apply_xor_oracle(f, tensor(s, minus));
      const auto b = tensor(apply_phase_oracle(f, s), minus);
      EXPECT_LT(max_diff(a.amplitudes(), b.amplitudes()), 1e-14);
    }
  }
}

TEST(NegationLaw, OracleOutputsDifferByMinusOne) {
  std::mt19937_64 rng(25);
  for (unsigned n = 1; n <= 5; ++n) {
    const auto f = BooleanFunction::from_bits(n, rng());
    const auto s = random_state(rng, n);
    const auto a = apply_phase_oracle(f, s);
    const auto b = apply_phase_oracle(negate(f), s);
    for (std::size_t i = 0; i < a.dimension(); ++i) EXPECT_EQ(a.amplitude(i), -b.amplitude(i));
  }
}

TEST(Parse, BinaryAndHex) {
  EXPECT_EQ(parse_truth_table("0011"), BooleanFunction(2, {0, 0, 1, 1}));
  EXPECT_EQ(parse_truth_table("0x1E", 3).to_string(), "00011110");
  EXPECT_EQ(parse_truth_table("0x1e").to_string(), "00011110");
  EXPECT_EQ(parse_truth_table("0x6").to_string(), "0110");
  EXPECT_EQ(parse_truth_table("0x03", 2).to_string(), "0011");
  EXPECT_EQ(parse_truth_table("0x1", 1).to_string(), "01");
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_truth_table("001"), InvalidArgument);
  EXPECT_THROW(parse_truth_table(""), InvalidArgument);
  EXPECT_THROW(parse_truth_table("0"), InvalidArgument);
  EXPECT_THROW(parse_truth_table("0021"), InvalidArgument);
  EXPECT_THROW(parse_truth_table("0xZZ"), InvalidArgument);
  EXPECT_THROW(parse_truth_table("0x13", 2), InvalidArgument);
  EXPECT_THROW(parse_truth_table("0011", 3), InvalidArgument);
}

TEST(Oracle, CountsEveryApplication) {
  const Oracle oracle(table("0110"));
  const auto plus = hadamard_all(make_basis_state(2, 0));
  oracle.apply_phase(plus);
  oracle.apply_phase(plus);
  oracle.apply_xor(make_basis_state(3, 0));
  EXPECT_EQ(oracle.queries(), 3u);
  const Oracle copy(oracle);
  EXPECT_EQ(copy.queries(), 3u);
}
