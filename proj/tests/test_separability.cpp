#include <gtest/gtest.h>

#include "dequant/census.hpp"
#include "dequant/error.hpp"
#include "dequant/separability.hpp"
#include "test_support.hpp"

using namespace dequant;
using namespace testing_support;

namespace {

const double h = 1.0 / std::sqrt(2.0);

StateVector state_of(const std::string& bits) { return oracle_output_state(parse_truth_table(bits)); }

std::vector<unsigned> subset_from_mask(unsigned mask, unsigned n) {
  std::vector<unsigned> out;
  for (unsigned q = 0; q < n; ++q)
    if (mask & (1u << q)) out.push_back(q);
  return out;
}

}  // namespace

TEST(PairProduct, BalancedTwoQubitStateIsInvariant) {
  const auto rep = pair_product_invariant(StateVector::from_signs({1, 1, -1, -1}));
  EXPECT_TRUE(rep.invariant);
  EXPECT_TRUE(rep.exact);
  ASSERT_EQ(rep.levels.size(), 1u);
  EXPECT_EQ(rep.levels[0].k, 2u);
  EXPECT_EQ(rep.levels[0].constant, Complex(-0.25));
}

TEST(PairProduct, EntangledExampleFailsAtLevelTwo) {
  const auto rep = pair_product_invariant(state_of("00011110"));
  EXPECT_FALSE(rep.invariant);
  ASSERT_FALSE(rep.levels[0].consistent);
  ASSERT_TRUE(rep.levels[0].violation.has_value());
  const auto v = *rep.levels[0].violation;
  EXPECT_EQ(v.a, 0u);
  EXPECT_EQ(v.a_partner, 3u);
  EXPECT_EQ(v.b, 1u);
  EXPECT_EQ(v.b_partner, 2u);
}

TEST(PairProduct, ConstantStatesHaveEqualLevelConstants) {
  for (unsigned n = 2; n <= 8; ++n) {
    for (bool value : {false, true}) {
      const auto rep = pair_product_invariant(oracle_output_state(BooleanFunction::constant(n, value)));
      EXPECT_TRUE(rep.invariant);
      for (const auto& level : rep.levels) EXPECT_EQ(level.constant, rep.levels[0].constant);
    }
  }
}

TEST(PairProduct, RequiresTwoQubits) {
  EXPECT_THROW(pair_product_invariant(make_basis_state(1, 0)), InvalidArgument);
}

TEST(PairProduct, PreconditionFlagsZeroAmplitudes) {
  const auto rep = pair_product_invariant(make_basis_state(2, 0));
  EXPECT_FALSE(rep.precondition_met);
}

TEST(PairProduct, FloatPathAgreesWithSignPath) {
  for (const auto& f : all_functions(3)) {
    const auto s = oracle_output_state(f);
    const auto g = StateVector::from_amplitudes(s.amplitudes());
    EXPECT_EQ(pair_product_invariant(s).invariant, pair_product_invariant(g).invariant) << f.to_string();
    EXPECT_FALSE(pair_product_invariant(g).exact);
  }
}

TEST(PairProduct, AgreesWithMinorsOracleOnRandomStates) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const unsigned n = 2 + static_cast<unsigned>(t % 4);
    const auto s = t % 2 ? random_state(rng, n) : random_product_state(rng, n, 0.05);
    EXPECT_EQ(pair_product_invariant(s).invariant, fully_separable_by_minors(s)) << "trial " << t;
  }
}

TEST(Factorization, MinusMinus) {
  const auto outcome = factor_product_state(StateVector::from_signs({1, -1, -1, 1}));
  ASSERT_TRUE(is_product(outcome));
  const auto& p = std::get<ProductFactorization>(outcome);
  ASSERT_EQ(p.factors.size(), 2u);
  for (const auto& q : p.factors) {
    EXPECT_NEAR(std::abs(q[0] - h), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(q[1] + h), 0.0, 1e-15);
  }
  EXPECT_EQ(p.global_phase, Complex(1.0));
}

TEST(Factorization, ConstantStateCarriesSignInGlobalPhase) {
  for (bool value : {false, true}) {
    const auto outcome = factor_product_state(oracle_output_state(BooleanFunction::constant(3, value)));
    ASSERT_TRUE(is_product(outcome));
    const auto& p = std::get<ProductFactorization>(outcome);
    for (const auto& q : p.factors) {
      EXPECT_NEAR(std::abs(q[0] - h), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(q[1] - h), 0.0, 1e-15);
    }
    EXPECT_EQ(p.global_phase, Complex(value ? -1.0 : 1.0));
  }
}

TEST(Factorization, EntangledExample) {
  const auto outcome = factor_product_state(state_of("00011110"));
  ASSERT_FALSE(is_product(outcome));
}

TEST(Factorization, TwoQubitFactorsFollowXorPattern) {
  // f(00) xor f(10) decides qubit 0, f(10) xor f(11) decides qubit 1.
  for (const auto& f : all_functions(2)) {
    if (!is_valid(f)) continue;
    const auto p = std::get<ProductFactorization>(factor_product_state(oracle_output_state(f)));
    const double s0 = (f(0) ^ f(2)) ? -1.0 : 1.0;
    const double s1 = (f(2) ^ f(3)) ? -1.0 : 1.0;
    EXPECT_NEAR(std::abs(p.factors[0][1] - s0 * h), 0.0, 1e-15) << f.to_string();
    EXPECT_NEAR(std::abs(p.factors[1][1] - s1 * h), 0.0, 1e-15) << f.to_string();
    EXPECT_EQ(p.global_phase, Complex(f(0) ? -1.0 : 1.0));
  }
}

TEST(Factorization, RoundTripOnRandomProductStates) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 200; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(t % 7);
    const auto s = random_product_state(rng, n);
    const auto outcome = factor_product_state(s);
    ASSERT_TRUE(is_product(outcome)) << "trial " << t;
    const auto& p = std::get<ProductFactorization>(outcome);
    for (const auto& q : p.factors) {
      EXPECT_NEAR(std::norm(q[0]) + std::norm(q[1]), 1.0, 1e-12);
    }
    EXPECT_GT(fidelity(reconstruct(p), s), 1.0 - 1e-9);
    EXPECT_TRUE(equal_up_to_global_phase(reconstruct(p), s, 1e-10));
  }
}

TEST(Factorization, RoundTripWithZeroComponents) {
  const auto s = StateVector::from_amplitudes({0.0, h, 0.0, Complex(0.0, -h)});  // |0> (x) (|0> - i|1>)/sqrt2
  const auto outcome = factor_product_state(s);
  ASSERT_TRUE(is_product(outcome));
  EXPECT_GT(fidelity(reconstruct(std::get<ProductFactorization>(outcome)), s), 1.0 - 1e-12);
}

TEST(Factorization, SignStatesReconstructExactly) {
  for (const auto& f : enumerate_separable_functions(4)) {
    const auto s = oracle_output_state(f);
    const auto r = reconstruct(std::get<ProductFactorization>(factor_product_state(s)));
    ASSERT_TRUE(r.is_exact_sign());
    EXPECT_TRUE(std::equal(s.signs().begin(), s.signs().end(), r.signs().begin()));
  }
}

TEST(Factorization, RandomStatesAreEntangled) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_state(rng, 2 + static_cast<unsigned>(t % 4));
    EXPECT_FALSE(is_product(factor_product_state(s)));
  }
}

TEST(QubitSeparable, ProductOnCutZero) {
  const auto plus = hadamard_all(make_basis_state(1, 0));
  const auto bell = StateVector::from_amplitudes({h, 0.0, 0.0, h});
  const auto s = tensor(plus, bell);
  EXPECT_TRUE(qubit_separable(s, 0));
  EXPECT_FALSE(qubit_separable(s, 1));
  EXPECT_FALSE(qubit_separable(s, 2));
}

TEST(QubitSeparable, WitnessHasNoSeparableQubit) {
  const auto s = oracle_output_state(proposition_witness(3));
  for (unsigned q = 0; q < 3; ++q) EXPECT_FALSE(qubit_separable(s, q));
}

TEST(QubitSeparable, BasisState) { EXPECT_TRUE(qubit_separable(make_basis_state(2, 0), 1)); }

TEST(QubitSeparable, AgreesWithMinorsOracle) {
  for (const auto& f : all_functions(3)) {
    const auto s = oracle_output_state(f);
    const auto g = StateVector::from_amplitudes(s.amplitudes());
    for (unsigned q = 0; q < 3; ++q) {
      EXPECT_EQ(qubit_separable(s, q), minors_vanish(s, {q})) << f.to_string() << " q" << q;
      EXPECT_EQ(qubit_separable(g, q), minors_vanish(s, {q})) << f.to_string() << " q" << q;
    }
  }
}

TEST(Bipartition, ProductStateSeparatesEverywhere) {
  const auto minus = hadamard_all(make_basis_state(1, 1));
  const auto s = tensor(tensor(minus, minus), minus);
  const unsigned cut[] = {0, 1};
  EXPECT_TRUE(bipartition_separable(s, cut));
}

TEST(Bipartition, BellStateDoesNot) {
  const unsigned cut[] = {0};
  EXPECT_FALSE(bipartition_separable(StateVector::from_amplitudes({h, 0.0, 0.0, h}), cut));
}

TEST(Bipartition, FourQubitWitnessHasNoSeparableCut) {
  const auto s = oracle_output_state(proposition_witness(4));
  for (unsigned mask = 1; mask < 15; ++mask) {
    const auto subset = subset_from_mask(mask, 4);
    EXPECT_FALSE(bipartition_separable(s, subset)) << "mask " << mask;
  }
}

TEST(Bipartition, AgreesWithMinorsOracle) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    const auto f = BooleanFunction::from_bits(4, rng());
    const auto s = oracle_output_state(f);
    const unsigned mask = 1 + static_cast<unsigned>(rng() % 14);
    const auto subset = subset_from_mask(mask, 4);
    EXPECT_EQ(bipartition_separable(s, subset), minors_vanish(s, subset)) << f.to_string();
    const auto g = StateVector::from_amplitudes(s.amplitudes());
    EXPECT_EQ(bipartition_separable(g, subset), minors_vanish(s, subset)) << f.to_string();
  }
}

TEST(Bipartition, RejectsImproperSubsets) {
  const auto s = make_basis_state(2, 0);
  EXPECT_THROW(bipartition_separable(s, std::vector<unsigned>{}), InvalidArgument);
  EXPECT_THROW(bipartition_separable(s, std::vector<unsigned>{0, 1}), InvalidArgument);
  EXPECT_THROW(bipartition_separable(s, std::vector<unsigned>{2}), InvalidArgument);
}

TEST(TwoQubitCondition, Examples) {
  EXPECT_TRUE(n2_separability_condition(parse_truth_table("0110")));
  EXPECT_TRUE(n2_separability_condition(parse_truth_table("0011")));
  EXPECT_FALSE(n2_separability_condition(parse_truth_table("0111")));
}

TEST(TwoQubitCondition, EquivalentToFactorization) {
  for (const auto& f : all_functions(2)) {
    EXPECT_EQ(n2_separability_condition(f), is_product(factor_product_state(oracle_output_state(f))))
        << f.to_string();
  }
}

TEST(EntanglementProfile, WitnessIsMaximallyEntangledBothWays) {
  for (unsigned n = 3; n <= 6; ++n) {
    const auto p = entanglement_profile(oracle_output_state(proposition_witness(n)), 6);
    EXPECT_TRUE(p.no_qubit_separable);
    ASSERT_TRUE(p.no_cut_separable.has_value());
    EXPECT_TRUE(*p.no_cut_separable);
    EXPECT_TRUE(p.separable_cuts.empty());
  }
}

TEST(EntanglementProfile, NamedExampleHasASeparableQubit) {
  // 00011110: qubit 0 splits off, the other two are entangled.
  const auto p = entanglement_profile(state_of("00011110"));
  EXPECT_EQ(p.qubit_separable, (std::vector<bool>{true, false, false}));
  EXPECT_FALSE(p.no_qubit_separable);
  EXPECT_FALSE(*p.no_cut_separable);
}

TEST(EntanglementProfile, CutScanSkippedAboveLimit) {
  const auto p = entanglement_profile(oracle_output_state(proposition_witness(5)), 4);
  EXPECT_FALSE(p.no_cut_separable.has_value());
}
