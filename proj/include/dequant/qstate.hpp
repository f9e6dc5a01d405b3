// qstate.hpp
// n-qubit state vectors with an exact sign-vector fast path.
//
// Basis index i encodes the bit string x big-endian: qubit 0 is the most
// significant bit, so |01> is index 1 and |10> is index 2.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dequant {

using Complex = std::complex<double>;

// Amplitudes (<0|psi>, <1|psi>) of a single qubit.
using Qubit = std::array<Complex, 2>;

// Row-major 2x2 complex matrix, m[row][col].
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kRankTolerance = 1e-10;
inline constexpr double kZeroAmplitude = 1e-12;

// Ceiling on the qubit count of any state vector. Defaults to 24, or to the
// value of DEQUANTLAB_MAX_QUBITS when that is set to a positive integer.
unsigned max_qubits();
void set_max_qubits(unsigned n);

enum class Representation {
  ExactSign,       // s_i in {+1,-1}, amplitude s_i * 2^{-n/2}
  GeneralComplex,  // double-precision complex amplitudes
};

class StateVector {
 public:
  // Throws InvalidArgument unless the squared norm is 1 within kNormTolerance
  // and the length is a power of two >= 2.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);
  // Scales the input to unit norm first.
  static StateVector normalized(std::vector<Complex> amplitudes);
  // Entries must be +1 or -1.
  static StateVector from_signs(std::vector<std::int8_t> signs);

  unsigned num_qubits() const { return n_; }
  std::size_t dimension() const { return std::size_t{1} << n_; }
  Representation representation() const { return rep_; }
  bool is_exact_sign() const { return rep_ == Representation::ExactSign; }

  Complex amplitude(std::size_t i) const;
  std::vector<Complex> amplitudes() const;

  // Valid only for exact-sign states; empty otherwise.
  std::span<const std::int8_t> signs() const { return signs_; }
  // 2^{-n/2}, the implicit magnitude of every exact-sign amplitude.
  double sign_scale() const;

  double norm() const;

 private:
  StateVector() = default;
  friend class StateAccess;

  unsigned n_ = 0;
  Representation rep_ = Representation::GeneralComplex;
  std::vector<std::int8_t> signs_;
  std::vector<Complex> amps_;
};

// Marginal outcome distribution over `width` measured qubits. Outcome index is
// big-endian over the measured qubits in the order they were listed.
class MeasurementDistribution {
 public:
  MeasurementDistribution(unsigned width, std::vector<double> probabilities);

  unsigned width() const { return width_; }
  std::size_t size() const { return probs_.size(); }
  double probability(std::uint64_t outcome) const;
  std::span<const double> probabilities() const { return probs_; }

 private:
  unsigned width_;
  std::vector<double> probs_;
};

StateVector make_basis_state(unsigned n, std::uint64_t index);

// H^{(x)n} via an in-place fast Walsh-Hadamard butterfly. Exact-sign inputs
// are transformed with exact dyadic arithmetic; outputs whose amplitudes are
// exactly +-2^{-n/2} come back tagged exact-sign, so H(H(s)) == s bitwise
// for sign states.
StateVector hadamard_all(const StateVector& s);

StateVector tensor(const StateVector& a, const StateVector& b);

// Applies m to a single qubit.
StateVector apply_local_unitary(const StateVector& s, unsigned qubit, const Matrix2& m);

Complex inner_product(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);

// True iff ||a - lambda b|| < tol, with the unit scalar lambda fixed by the
// first amplitude of b whose magnitude exceeds tol.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

MeasurementDistribution measure_distribution(const StateVector& s,
                                             std::span<const unsigned> qubits);
MeasurementDistribution measure_all(const StateVector& s);

// Draws one outcome for demos; the distribution itself stays the tested value.
std::uint64_t sample_outcome(const MeasurementDistribution& d, std::mt19937_64& rng);

// Matrix helpers shared by the solver and optical modules.
Matrix2 multiply(const Matrix2& a, const Matrix2& b);
Matrix2 adjoint(const Matrix2& m);
Qubit apply(const Matrix2& m, const Qubit& q);
Complex determinant(const Matrix2& m);
// ||m^dagger m - I||_F
double unitarity_error(const Matrix2& m);
Matrix2 identity_matrix();
Matrix2 hadamard_matrix();

}  // namespace dequant
