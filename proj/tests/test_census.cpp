#include <gtest/gtest.h>

#include "dequant/census.hpp"
#include "dequant/error.hpp"
#include "dequant/separability.hpp"
#include "test_support.hpp"

using namespace dequant;
using namespace testing_support;

TEST(Census, ValidCounts) {
  EXPECT_EQ(count_valid(1), 4);
  EXPECT_EQ(count_valid(2), 8);
  EXPECT_EQ(count_valid(3), 72);
  EXPECT_EQ(count_valid(4), 12872);
  EXPECT_EQ(count_valid(7).get_str(), "23951146041928082866135587776380551752");
}

TEST(Census, SeparableCounts) {
  EXPECT_EQ(count_separable(1), 4);
  EXPECT_EQ(count_separable(2), 8);
  EXPECT_EQ(count_separable(3), 16);
  EXPECT_EQ(count_separable(30).get_str(), "2147483648");
}

TEST(Census, Fractions) {
  EXPECT_EQ(separable_fraction(1), mpq_class(1));
  EXPECT_EQ(separable_fraction(2), mpq_class(1));
  EXPECT_EQ(separable_fraction(3), mpq_class(2, 9));
  EXPECT_EQ(separable_fraction(4), mpq_class(4, 1609));
}

TEST(Census, FractionIsDecreasingFromThreeOn) {
  for (unsigned n = 3; n < 12; ++n) EXPECT_LT(separable_fraction(n + 1), separable_fraction(n));
}

TEST(Census, RejectsBadArity) {
  EXPECT_THROW(count_valid(0), InvalidArgument);
  EXPECT_THROW(count_valid(31), InvalidArgument);
  EXPECT_THROW(count_separable(0), InvalidArgument);
}

TEST(Enumeration, OneBitFunctionsInOrder) {
  const auto fs = enumerate_separable_functions(1);
  std::vector<std::string> names;
  for (const auto& f : fs) names.push_back(f.to_string());
  EXPECT_EQ(names, (std::vector<std::string>{"00", "11", "01", "10"}));
}

TEST(Enumeration, TwoBitFunctionsAreAllValidOnes) {
  std::set<BooleanFunction> listed;
  for (const auto& f : enumerate_separable_functions(2)) listed.insert(f);
  std::set<BooleanFunction> valid;
  for (const auto& f : all_functions(2))
    if (is_valid(f)) valid.insert(f);
  EXPECT_EQ(listed, valid);
}

TEST(Enumeration, EqualsAffineFunctions) {
  for (unsigned n = 1; n <= 10; ++n) {
    std::set<std::vector<std::uint8_t>> listed;
    for_each_separable_function(n, [&](const BooleanFunction& f) { listed.insert(f.table()); });
    EXPECT_EQ(listed.size(), std::size_t{1} << (n + 1)) << "duplicates at n=" << n;
    EXPECT_EQ(listed, affine_functions(n)) << "n=" << n;
  }
}

TEST(Enumeration, ThreeBitFunctionsPassPairProductInvariance) {
  const auto fs = enumerate_separable_functions(3);
  EXPECT_EQ(fs.size(), 16u);
  for (const auto& f : fs) {
    EXPECT_TRUE(is_valid(f));
    EXPECT_TRUE(pair_product_invariant(oracle_output_state(f)).invariant) << f.to_string();
  }
}

TEST(Enumeration, RejectsLargeArity) { EXPECT_THROW(enumerate_separable_functions(21), InvalidArgument); }

TEST(BruteForce, MatchesFormulasAndSets) {
  for (unsigned n = 1; n <= 4; ++n) {
    const auto r = brute_force_census(n, 1);
    EXPECT_EQ(r.method, CensusMethod::BruteForce);
    EXPECT_EQ(r.separable_count, count_separable(n));
    EXPECT_EQ(r.valid_count, count_valid(n));
    EXPECT_EQ(r.fraction, separable_fraction(n));
    std::set<std::vector<std::uint8_t>> found;
    for (const auto& f : *r.separable_set) found.insert(f.table());
    EXPECT_EQ(found, affine_functions(n));
  }
}

TEST(BruteForce, ParallelScanMatchesSerial) {
  const auto serial = brute_force_census(4, 1);
  for (unsigned threads : {2u, 4u, 7u}) {
    const auto par = brute_force_census(4, threads);
    EXPECT_EQ(par.valid_count, serial.valid_count);
    EXPECT_EQ(*par.separable_set, *serial.separable_set);
  }
}

TEST(BruteForce, RejectsLargeArity) { EXPECT_THROW(brute_force_census(5), InvalidArgument); }

TEST(FormulaCensus, ReportFields) {
  const auto r = formula_census(3, true);
  EXPECT_EQ(r.separable_count, 16);
  EXPECT_EQ(r.valid_count, 72);
  EXPECT_EQ(r.fraction.get_str(), "2/9");
  ASSERT_TRUE(r.separable_set.has_value());
  EXPECT_EQ(r.separable_set->size(), 16u);
  EXPECT_FALSE(formula_census(3).separable_set.has_value());
}

TEST(Witness, ThreeBitTable) { EXPECT_EQ(proposition_witness(3).to_string(), "00011101"); }

TEST(Witness, ZerosAtStatedPositions) {
  for (unsigned n = 3; n <= 10; ++n) {
    const auto f = proposition_witness(n);
    const std::size_t len = f.size();
    for (std::size_t a = 0; a < len; ++a) {
      const bool zero = a + 1 < len / 2 || a == len - 2;
      EXPECT_EQ(f(a), !zero) << "n=" << n << " a=" << a;
    }
    EXPECT_EQ(classify(f).kind, FunctionKind::Balanced);
    EXPECT_EQ(f.ones(), len / 2);
  }
}

TEST(Witness, NoSeparableQubit) {
  for (unsigned n = 3; n <= 12; ++n) {
    const auto s = oracle_output_state(proposition_witness(n));
    for (unsigned q = 0; q < n; ++q) EXPECT_FALSE(qubit_separable(s, q)) << "n=" << n << " q=" << q;
  }
}

TEST(Witness, ThreeQubitCutsByMinors) {
  const auto s = oracle_output_state(proposition_witness(3));
  for (unsigned q = 0; q < 3; ++q) EXPECT_FALSE(minors_vanish(s, {q}));
}

TEST(Witness, RejectsSmallArity) { EXPECT_THROW(proposition_witness(2), InvalidArgument); }

TEST(Witness, NamedExampleDiffersFromWitness) {
  EXPECT_EQ(entangled_example_n3().to_string(), "00011110");
  EXPECT_NE(entangled_example_n3(), proposition_witness(3));
}
