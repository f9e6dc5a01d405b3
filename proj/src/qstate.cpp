#include "dequant/qstate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "dequant/error.hpp"

namespace dequant {

namespace {

unsigned initial_max_qubits() {
  if (const char* env = std::getenv("DEQUANTLAB_MAX_QUBITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 62) return static_cast<unsigned>(v);
  }
  return 24;
}

std::atomic<unsigned>& max_qubits_slot() {
  static std::atomic<unsigned> slot{initial_max_qubits()};
  return slot;
}

void check_qubit_count(unsigned n) {
  if (n == 0) throw InvalidArgument("state must have at least one qubit");
  if (n > max_qubits()) {
    throw ResourceLimit("state of " + std::to_string(n) + " qubits exceeds the ceiling of " +
                        std::to_string(max_qubits()));
  }
}

unsigned log2_exact(std::size_t len) {
  if (len < 2 || (len & (len - 1)) != 0) {
    throw InvalidArgument("amplitude count " + std::to_string(len) +
                          " is not a power of two >= 2");
  }
  unsigned n = 0;
  while ((std::size_t{1} << n) < len) ++n;
  return n;
}

double scale_for(unsigned n) { return std::pow(2.0, -0.5 * static_cast<double>(n)); }

void butterfly(std::vector<Complex>& v) {
  const std::size_t len = v.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex x = v[j];
        const Complex y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

}  // namespace

unsigned max_qubits() { return max_qubits_slot().load(std::memory_order_relaxed); }

void set_max_qubits(unsigned n) {
  if (n == 0 || n > 62) throw InvalidArgument("qubit ceiling must be in [1, 62]");
  max_qubits_slot().store(n, std::memory_order_relaxed);
}

class StateAccess {
 public:
  static StateVector general(unsigned n, std::vector<Complex> amps) {
    StateVector s;
    s.n_ = n;
    s.rep_ = Representation::GeneralComplex;
    s.amps_ = std::move(amps);
    return s;
  }
  static StateVector sign(unsigned n, std::vector<std::int8_t> signs) {
    StateVector s;
    s.n_ = n;
    s.rep_ = Representation::ExactSign;
    s.signs_ = std::move(signs);
    return s;
  }
  // Retags as exact-sign when every amplitude is bitwise +-2^{-n/2}.
  static StateVector canonical(unsigned n, std::vector<Complex> amps) {
    const double scale = scale_for(n);
    std::vector<std::int8_t> signs(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const Complex a = amps[i];
      if (a.imag() != 0.0) return general(n, std::move(amps));
      if (a.real() == scale) {
        signs[i] = 1;
      } else if (a.real() == -scale) {
        signs[i] = -1;
      } else {
        return general(n, std::move(amps));
      }
    }
    return sign(n, std::move(signs));
  }
};

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const unsigned n = log2_exact(amplitudes.size());
  check_qubit_count(n);
  double norm2 = 0.0;
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidArgument("amplitudes must be finite");
    }
    norm2 += std::norm(a);
  }
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw InvalidArgument("amplitudes are not normalized (squared norm " + std::to_string(norm2) +
                          ")");
  }
  return StateAccess::general(n, std::move(amplitudes));
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
  const unsigned n = log2_exact(amplitudes.size());
  check_qubit_count(n);
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amplitudes) a *= inv;
  return StateAccess::general(n, std::move(amplitudes));
}

StateVector StateVector::from_signs(std::vector<std::int8_t> signs) {
  const unsigned n = log2_exact(signs.size());
  check_qubit_count(n);
  for (auto s : signs) {
    if (s != 1 && s != -1) throw InvalidArgument("sign entries must be +1 or -1");
  }
  return StateAccess::sign(n, std::move(signs));
}

double StateVector::sign_scale() const { return scale_for(n_); }

Complex StateVector::amplitude(std::size_t i) const {
  if (i >= dimension()) throw InvalidArgument("amplitude index out of range");
  if (rep_ == Representation::ExactSign) return {signs_[i] * sign_scale(), 0.0};
  return amps_[i];
}

std::vector<Complex> StateVector::amplitudes() const {
  if (rep_ == Representation::GeneralComplex) return amps_;
  const double scale = sign_scale();
  std::vector<Complex> out(signs_.size());
  for (std::size_t i = 0; i < signs_.size(); ++i) out[i] = {signs_[i] * scale, 0.0};
  return out;
}

double StateVector::norm() const {
  if (rep_ == Representation::ExactSign) return 1.0;
  double norm2 = 0.0;
  for (const auto& a : amps_) norm2 += std::norm(a);
  return std::sqrt(norm2);
}

MeasurementDistribution::MeasurementDistribution(unsigned width, std::vector<double> probabilities)
    : width_(width), probs_(std::move(probabilities)) {
  if (width_ == 0 || width_ > 62 || probs_.size() != (std::size_t{1} << width_)) {
    throw InvalidArgument("distribution size does not match its outcome width");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || p > 1.0 + kNormTolerance) {
      throw InvalidArgument("probabilities must lie in [0, 1]");
    }
    total += p;
  }
  // Summation over up to 2^24 outcomes; the per-state invariant is tested at 1e-12.
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("probabilities do not sum to 1");
}

double MeasurementDistribution::probability(std::uint64_t outcome) const {
  if (outcome >= probs_.size()) throw InvalidArgument("outcome out of range");
  return probs_[outcome];
}

StateVector make_basis_state(unsigned n, std::uint64_t index) {
  check_qubit_count(n);
  const std::size_t dim = std::size_t{1} << n;
  if (index >= dim) {
    throw InvalidArgument("basis index " + std::to_string(index) + " out of range for " +
                          std::to_string(n) + " qubits");
  }
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateAccess::general(n, std::move(amps));
}

StateVector hadamard_all(const StateVector& s) {
  const unsigned n = s.num_qubits();
  std::vector<Complex> v;
  double scale;
  if (s.is_exact_sign()) {
    // Integer Walsh transform of the raw signs; the combined factor 2^{-n}
    // is a power of two, so every output amplitude is exact.
    v.resize(s.dimension());
    auto signs = s.signs();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(signs[i]);
    scale = std::ldexp(1.0, -static_cast<int>(n));
  } else {
    v = s.amplitudes();
    scale = scale_for(n);
  }
  butterfly(v);
  for (auto& a : v) a *= scale;
  return StateAccess::canonical(n, std::move(v));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const unsigned n = a.num_qubits() + b.num_qubits();
  check_qubit_count(n);
  const std::size_t db = b.dimension();
  if (a.is_exact_sign() && b.is_exact_sign()) {
    std::vector<std::int8_t> signs(std::size_t{1} << n);
    auto sa = a.signs();
    auto sb = b.signs();
    for (std::size_t i = 0; i < sa.size(); ++i) {
      for (std::size_t j = 0; j < db; ++j) {
        signs[i * db + j] = static_cast<std::int8_t>(sa[i] * sb[j]);
      }
    }
    return StateAccess::sign(n, std::move(signs));
  }
  const auto va = a.amplitudes();
  const auto vb = b.amplitudes();
  std::vector<Complex> out(std::size_t{1} << n);
  for (std::size_t i = 0; i < va.size(); ++i) {
    for (std::size_t j = 0; j < db; ++j) out[i * db + j] = va[i] * vb[j];
  }
  return StateAccess::general(n, std::move(out));
}

StateVector apply_local_unitary(const StateVector& s, unsigned qubit, const Matrix2& m) {
  const unsigned n = s.num_qubits();
  if (qubit >= n) throw InvalidArgument("qubit index out of range");
  auto v = s.amplitudes();
  const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = v[i];
    const Complex a1 = v[i | mask];
    v[i] = m[0][0] * a0 + m[0][1] * a1;
    v[i | mask] = m[1][0] * a0 + m[1][1] * a1;
  }
  return StateAccess::general(n, std::move(v));
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("qubit counts differ");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) acc += std::conj(a.amplitude(i)) * b.amplitude(i);
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("qubit counts differ");
  const auto va = a.amplitudes();
  const auto vb = b.amplitudes();
  Complex lambda = 1.0;
  bool fixed = false;
  for (std::size_t i = 0; i < vb.size(); ++i) {
    if (std::abs(vb[i]) > tol) {
      const Complex ratio = va[i] / vb[i];
      if (std::abs(ratio) == 0.0) return false;
      lambda = ratio / std::abs(ratio);
      fixed = true;
      break;
    }
  }
  if (!fixed) lambda = 1.0;
  double dist2 = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) dist2 += std::norm(va[i] - lambda * vb[i]);
  return std::sqrt(dist2) < tol;
}

MeasurementDistribution measure_distribution(const StateVector& s,
                                             std::span<const unsigned> qubits) {
  const unsigned n = s.num_qubits();
  if (qubits.empty()) throw InvalidArgument("no qubits to measure");
  std::vector<bool> seen(n, false);
  for (unsigned q : qubits) {
    if (q >= n) throw InvalidArgument("measured qubit index out of range");
    if (seen[q]) throw InvalidArgument("duplicate measured qubit index");
    seen[q] = true;
  }
  const unsigned width = static_cast<unsigned>(qubits.size());
  std::vector<double> probs(std::size_t{1} << width, 0.0);
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    std::uint64_t outcome = 0;
    for (unsigned q : qubits) outcome = (outcome << 1) | ((i >> (n - 1 - q)) & 1u);
    probs[outcome] += std::norm(s.amplitude(i));
  }
  return MeasurementDistribution(width, std::move(probs));
}

MeasurementDistribution measure_all(const StateVector& s) {
  std::vector<unsigned> all(s.num_qubits());
  for (unsigned q = 0; q < all.size(); ++q) all[q] = q;
  return measure_distribution(s, all);
}

std::uint64_t sample_outcome(const MeasurementDistribution& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double r = uni(rng);
  double acc = 0.0;
  const auto probs = d.probabilities();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (r < acc) return i;
  }
  // Rounding left r above the running total; fall back to the last supported outcome.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return 0;
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  Matrix2 c{};
  for (int r = 0; r < 2; ++r) {
    for (int k = 0; k < 2; ++k) c[r][k] = a[r][0] * b[0][k] + a[r][1] * b[1][k];
  }
  return c;
}

Matrix2 adjoint(const Matrix2& m) {
  return {{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

Qubit apply(const Matrix2& m, const Qubit& q) {
  return {m[0][0] * q[0] + m[0][1] * q[1], m[1][0] * q[0] + m[1][1] * q[1]};
}

Complex determinant(const Matrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

double unitarity_error(const Matrix2& m) {
  const Matrix2 p = multiply(adjoint(m), m);
  double err = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) err += std::norm(p[r][c] - (r == c ? 1.0 : 0.0));
  }
  return std::sqrt(err);
}

Matrix2 identity_matrix() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

Matrix2 hadamard_matrix() {
  const double h = 1.0 / std::sqrt(2.0);
  return {{{h, h}, {h, -h}}};
}

}  // namespace dequant
