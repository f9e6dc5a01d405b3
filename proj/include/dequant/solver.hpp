// solver.hpp
// Solution routes for the constant-vs-balanced problem: the quantum
// state-vector algorithm, the complex-bit classical solvers for n = 1 and
// n = 2, and the general product-oracle de-quantiser.

#pragma once

#include <atomic>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dequant/oracle.hpp"
#include "dequant/qstate.hpp"
#include "dequant/separability.hpp"

namespace dequant {

enum class Verdict { Constant, Balanced };

std::string_view to_string(Verdict v);

struct SolveResult {
  Verdict verdict;
  std::optional<BooleanFunction> identified_function;  // classical n=1/n=2 solvers only
  std::uint64_t oracle_calls;
  // Probability of the all-zero outcome (quantum and optical routes).
  std::optional<double> zero_probability;
  // Final distribution over the input register (quantum and optical routes).
  std::optional<MeasurementDistribution> distribution;
  // Projected complex-bit outputs (classical routes): w, or (w1, w2).
  std::vector<Complex> complex_outputs;
  std::vector<std::string> trace;
};

// H^n, one phase-oracle query, H^n on |0...0>. Constant iff p0 > 1 - 1e-9,
// Balanced iff p0 < 1e-9, PromiseViolation otherwise. The promise is checked
// from the measured p0 only; f is never inspected outside the black box.
SolveResult solve_dj_quantum(const BooleanFunction& f);

// z = a + b i with basis 1 <-> logical 0, i <-> logical 1.
struct ComplexBit {
  Complex value;
};

// Classical black box acting on complex-bits. For arity 1,
// C_f(a + bi) = (-1)^{f(0)} (a + (-1)^{f(0) xor f(1)} b i). For arity 2 the
// two components transform independently with sign patterns from f(00),
// f(10), f(11); constructing it requires arity 1 or 2.
class ComplexBitOracle {
 public:
  explicit ComplexBitOracle(const BooleanFunction& f);

  unsigned arity() const { return arity_; }
  ComplexBit query(ComplexBit z) const;
  std::array<ComplexBit, 2> query(ComplexBit z1, ComplexBit z2) const;
  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }

 private:
  unsigned arity_;
  int lead_sign_;   // (-1)^{f(0...0)}
  int conj_first_;  // (-1)^{f(0) xor f(1)} or (-1)^{f(00) xor f(10)}
  int conj_second_; // (-1)^{f(10) xor f(11)}; arity 2 only
  mutable std::atomic<std::uint64_t> queries_{0};
};

// w = z * C_f(z) / 2 with z = 1 + i; imaginary => Constant, real => Balanced,
// and the sign identifies f.
SolveResult solve_deutsch_classical(const BooleanFunction& f);

// Applies the two-component black box to (z, z), multiplies each component
// by z / 2. Constant iff both are imaginary. f(00) comes from the sign of the
// first component, f(00) xor f(10) and f(10) xor f(11) from which components
// are real. The decoded table is audited against f; a mismatch (invalid f)
// raises PromiseViolation.
SolveResult solve_dj2_classical(const BooleanFunction& f);

// Per-qubit 2x2 unitaries whose tensor product is the black box's action.
class ClassicalVectorOracle {
 public:
  // Each factor must be unitary within 1e-10.
  explicit ClassicalVectorOracle(std::vector<Matrix2> factors);
  ClassicalVectorOracle(const ClassicalVectorOracle& other);
  ClassicalVectorOracle& operator=(const ClassicalVectorOracle&) = delete;

  unsigned num_qubits() const { return static_cast<unsigned>(factors_.size()); }
  const std::vector<Matrix2>& factors() const { return factors_; }

  // (alpha_i, beta_i) -> (a alpha_i + b beta_i, c alpha_i + d beta_i) per qubit.
  std::vector<Qubit> query(const std::vector<Qubit>& register_state) const;
  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }

 private:
  std::vector<Matrix2> factors_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

// Product-oracle extraction for valid f: factors the phase-oracle image of
// |+>^n and completes each factor phi to the unitary |+> -> phi,
// |-> -> (conj phi_1, -conj phi_0), which has determinant 1. The global phase
// goes into factor 0. Entangled when the image does not factor.
using ProductOracleOutcome = std::variant<ClassicalVectorOracle, Entangled>;
ProductOracleOutcome extract_product_oracle(const BooleanFunction& f);

// Step vocabulary for flows run by the de-quantiser.
struct LocalGate {
  std::optional<unsigned> qubit;  // nullopt: apply to every qubit
  Matrix2 matrix;
};
struct OracleQuery {};
using FlowStep = std::variant<LocalGate, OracleQuery>;

// Starts from the basis state with bits `initial`, runs the steps, then
// measures every qubit.
struct Flow {
  unsigned num_qubits;
  std::uint64_t initial = 0;
  std::vector<FlowStep> steps;
};

// H on all, one query, H on all.
Flow deutsch_jozsa_flow(unsigned n);

// Runs the flow on n independent two-component vectors; the joint
// distribution is the product of per-qubit distributions. Queries are
// counted on the oracle.
MeasurementDistribution run_dequantised(const ClassicalVectorOracle& oracle, const Flow& flow);

// Reference route for the same flow: full 2^n state vector, with each query
// applied as the dense Kronecker product of the oracle's factors. Counts
// one query per application in `queries`.
MeasurementDistribution run_state_vector(const ClassicalVectorOracle& oracle, const Flow& flow,
                                         std::uint64_t& queries);

// Total variation distance 1/2 sum |p_i - q_i|.
double distribution_distance(const MeasurementDistribution& p, const MeasurementDistribution& q);

// Haar-distributed SU(2) element.
Matrix2 random_su2(std::mt19937_64& rng);

}  // namespace dequant
