// separability.hpp
// Pair product invariance, product-state factorization and entanglement
// witnesses for pure n-qubit states.

#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dequant/oracle.hpp"
#include "dequant/qstate.hpp"

namespace dequant {

// Two index pairs at one level whose amplitude products differ:
// alpha[a] * alpha[a_partner] != alpha[b] * alpha[b_partner], partner = K - i - 1.
struct PairViolation {
  std::size_t a;
  std::size_t a_partner;
  std::size_t b;
  std::size_t b_partner;
};

struct PairProductLevel {
  unsigned k;        // K = 2^k
  bool consistent;
  Complex constant;  // c_k = alpha[0] * alpha[K-1]; meaningful when consistent
  std::optional<PairViolation> violation;
};

struct PairProductReport {
  // All amplitudes have magnitude >= kZeroAmplitude. Only then does the
  // invariant decide full separability; otherwise use factor_product_state.
  bool precondition_met;
  bool invariant;
  bool exact;  // decided with integer sign arithmetic
  std::vector<PairProductLevel> levels;  // k = 2..n
};

// Checks, per level k = 2..n, that alpha_i * alpha_{K-i-1} is the same for
// every i < 2^{k-1}. Throws InvalidArgument for n < 2.
PairProductReport pair_product_invariant(const StateVector& s);

struct ProductFactorization {
  std::vector<Qubit> factors;  // unit norm; first component above tolerance is real positive
  Complex global_phase;
};

struct Entangled {
  unsigned failing_qubit;  // first qubit whose cut against the rest has rank > 1
};

using FactorOutcome = std::variant<ProductFactorization, Entangled>;

// Peels qubits left to right through rank-1 tests of the 2 x 2^{m-1}
// reshaping. Exact on sign states; largest-pivot elimination with
// kRankTolerance otherwise.
FactorOutcome factor_product_state(const StateVector& s);

inline bool is_product(const FactorOutcome& o) {
  return std::holds_alternative<ProductFactorization>(o);
}

// Tensor product of the factors times the global phase.
StateVector reconstruct(const ProductFactorization& p);

// Rank-1 test of the reshaping along qubit i (block pairing on sign states).
bool qubit_separable(const StateVector& s, unsigned qubit);

// Rank-1 test of the 2^{|subset|} x 2^{n-|subset|} reshaping. Subset must be
// nonempty and proper.
bool bipartition_separable(const StateVector& s, std::span<const unsigned> subset);

// Full separability verdict: pair product invariance when its precondition
// holds, factorization otherwise.
bool fully_separable(const StateVector& s);

// f(00) xor f(11) == f(01) xor f(10); arity must be 2.
bool n2_separability_condition(const BooleanFunction& f);

struct EntanglementProfile {
  std::vector<bool> qubit_separable;       // per qubit
  bool no_qubit_separable;                 // weak reading of "maximally entangled"
  std::optional<bool> no_cut_separable;    // strong reading; set when the cut scan ran
  std::vector<std::vector<unsigned>> separable_cuts;
};

// The cut scan visits each bipartition once (subsets containing qubit 0),
// and runs only for n <= max_cut_scan_qubits.
EntanglementProfile entanglement_profile(const StateVector& s, unsigned max_cut_scan_qubits = 12);

// H^{(x)n}|0...0> followed by the phase oracle: the register state after one
// black-box query, as an exact sign vector.
StateVector oracle_output_state(const BooleanFunction& f);

}  // namespace dequant
