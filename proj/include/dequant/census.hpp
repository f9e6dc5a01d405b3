// census.hpp
// Counting and enumeration of valid and separable Boolean functions.
//
// "Separable" here means the one-query register state
// sum_x (-1)^{f(x)} |x> / 2^{n/2} is a full product state.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dequant/oracle.hpp"

namespace dequant {

enum class CensusMethod { Formula, BruteForce };

std::string_view to_string(CensusMethod m);

struct CensusReport {
  unsigned n;
  mpz_class separable_count;  // a_n
  mpz_class valid_count;      // b_n
  mpq_class fraction;         // a_n / b_n in lowest terms
  CensusMethod method;
  std::optional<std::vector<BooleanFunction>> separable_set;
};

// C(2^n, 2^{n-1}) + 2. Rejects n = 0 and n > 30.
mpz_class count_valid(unsigned n);

// 2^{n+1}.
mpz_class count_separable(unsigned n);

// a_n / b_n from the closed forms.
mpq_class separable_fraction(unsigned n);

// Formula-only report; when `with_set`, the separable set comes from
// enumerate_separable_functions (n <= 16).
CensusReport formula_census(unsigned n, bool with_set = false);

// Emits every separable valid function of arity n. Built recursively from
// the four arity-1 functions: each parent f_n yields two children whose lower
// half copies f_n and whose upper half is fixed by the top-level pair
// product constraint once the free bit f(10...0) is chosen. Order is
// depth-first by (parent, free bit). Rejects n = 0 and n > 20.
void for_each_separable_function(unsigned n,
                                 const std::function<void(const BooleanFunction&)>& emit);
std::vector<BooleanFunction> enumerate_separable_functions(unsigned n);

// Scans all 2^{2^n} truth tables, classifies each and factors the oracle
// state of every valid one. n <= 4; the table index space is split into
// `threads` contiguous chunks (0 = hardware concurrency).
CensusReport brute_force_census(unsigned n, unsigned threads = 1);

// The balanced function with f(a) = 0 exactly for a in {0..2^{n-1}-2} and
// a = 2^n - 2. Its oracle state has no separable qubit. n >= 3.
BooleanFunction proposition_witness(unsigned n);

// (0,0,0,1,1,1,1,0): balanced, arity 3, entangled oracle state.
BooleanFunction entangled_example_n3();

}  // namespace dequant
