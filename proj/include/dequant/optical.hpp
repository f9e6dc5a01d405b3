// optical.hpp
// Jones-calculus model of the classical optical solutions: polarisation
// states, wave plates, the one- and two-photon protocols, and decomposition
// of SU(2) gates into quarter-half-quarter wave-plate stacks.
//
// Conventions: x-pol is logical 0, y-pol logical 1. A plate with fast axis at
// angle theta acts as R(theta) diag(1, r) R(-theta), r = i (quarter) or
// r = -1 (half). Global phases are discarded.

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <vector>

#include "dequant/oracle.hpp"
#include "dequant/qstate.hpp"
#include "dequant/solver.hpp"

namespace dequant::optical {

class JonesVector {
 public:
  // Throws InvalidArgument unless |ex|^2 + |ey|^2 = 1 within 1e-12.
  JonesVector(Complex ex, Complex ey);
  static JonesVector x_pol() { return {1.0, 0.0}; }
  static JonesVector y_pol() { return {0.0, 1.0}; }

  Complex ex() const { return c_[0]; }
  Complex ey() const { return c_[1]; }
  const Qubit& components() const { return c_; }

 private:
  Qubit c_;
};

enum class PlateKind { Quarter, Half };

struct WavePlate {
  WavePlate(PlateKind kind, double angle);  // angle reduced to [0, pi)
  PlateKind kind;
  double angle;
};

Matrix2 rotation_matrix(double phi);
Matrix2 waveplate_matrix(const WavePlate& p);

// Anti-clockwise rotation in the xy-plane.
JonesVector rotate_polarisation(const JonesVector& v, double phi);
JonesVector pass_through(const JonesVector& v, const WavePlate& p);

// Probability of detecting the photon as y-polarised.
double y_probability(const JonesVector& v);

struct PlateAngles {
  double quarter_first;   // theta1, leftmost factor
  double half;            // theta2
  double quarter_second;  // theta3, first plate the light meets
  double residual;        // phase-aligned Frobenius residual
};

// Q(theta1) H(theta2) Q(theta3), the matrix of a quarter-half-quarter stack.
Matrix2 stack_matrix(const PlateAngles& a);

// min over unit lambda of ||w - lambda u||_F.
double phase_aligned_residual(const Matrix2& w, const Matrix2& u);

inline constexpr double kDecompositionTolerance = 1e-8;

// Finds plate angles reproducing u up to global phase: residuals on an 8^3
// grid over [0, pi)^3 seed Nelder-Mead runs, best starts first, until one
// reaches the target. Throws InvalidArgument for non-special-unitary input
// and NumericalFailure if no start gets below kDecompositionTolerance.
PlateAngles decompose_su2(const Matrix2& u);

// A wave-plate stack acting as the black box on one photon. Passing a photon
// through `plates` in order is one query.
class OpticalBlackBox {
 public:
  explicit OpticalBlackBox(std::vector<WavePlate> plates) : plates_(std::move(plates)) {}
  OpticalBlackBox(const OpticalBlackBox& other) : plates_(other.plates_), queries_(other.queries()) {}
  OpticalBlackBox& operator=(const OpticalBlackBox&) = delete;
  // Realizes u (any 2x2 unitary) as a quarter-half-quarter stack, up to phase.
  static OpticalBlackBox realizing(const Matrix2& u);

  const std::vector<WavePlate>& plates() const { return plates_; }
  JonesVector query(const JonesVector& v) const;
  Matrix2 matrix() const;
  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }

 private:
  std::vector<WavePlate> plates_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

// One stack per photon; the photons only ever exist as two separate
// two-component vectors. Sending the pair through is one query.
class TwoPhotonBlackBox {
 public:
  TwoPhotonBlackBox(std::vector<WavePlate> first, std::vector<WavePlate> second)
      : first_(std::move(first)), second_(std::move(second)) {}

  std::array<JonesVector, 2> query(const std::array<JonesVector, 2>& photons) const;
  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }

 private:
  OpticalBlackBox first_;
  OpticalBlackBox second_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

// Both stacks realizing the factors of the extracted product oracle.
// Throws PromiseViolation for invalid f; f must have arity 2 and a separable
// oracle state (always true for valid f at arity 2).
TwoPhotonBlackBox dj2_black_box(const BooleanFunction& f);

// Black box for one input bit: the stack realizing diag((-1)^{f(0)}, (-1)^{f(1)}).
OpticalBlackBox deutsch_black_box(const BooleanFunction& f);

// Prepare y-pol, rotate pi/4, black box, rotate pi/4, measure y-pol.
// Constant iff the y-pol probability is 0 (within 1e-9). One query.
SolveResult optical_deutsch(const BooleanFunction& f);

// Two photons that never interact: each is prepared x-pol, rotated pi/4 into
// the diagonal state, sent through its own stack from the extracted product
// oracle, rotated back by -pi/4 and measured. y-pol reads as 1. Constant iff
// both photons read 0. The pair of stacks is one query.
SolveResult optical_dj2(const BooleanFunction& f);

}  // namespace dequant::optical
