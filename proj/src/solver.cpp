#include "dequant/solver.hpp"

#include <cmath>
#include <sstream>

#include "dequant/error.hpp"

namespace dequant {

namespace {

constexpr double kVerdictTolerance = 1e-9;
constexpr double kUnitaryTolerance = 1e-10;

// |Re| < 1e-9 |Im|. For z = 1 + i inputs the components are exactly 0, +-1
// or +-i, so the comparison is exact in practice.
bool is_imaginary(Complex w) { return std::abs(w.real()) < kVerdictTolerance * std::abs(w.imag()); }
bool is_real(Complex w) { return std::abs(w.imag()) < kVerdictTolerance * std::abs(w.real()); }

int phase_sign(bool bit) { return bit ? -1 : 1; }

std::string format_complex(Complex w) {
  std::ostringstream os;
  os << w.real() << (w.imag() < 0 ? " - " : " + ") << std::abs(w.imag()) << "i";
  return os.str();
}

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::Constant ? "Constant" : "Balanced"; }

SolveResult solve_dj_quantum(const BooleanFunction& f) {
  const Oracle oracle(f);
  const unsigned n = f.arity();
  SolveResult result{Verdict::Constant, std::nullopt, 0, std::nullopt, std::nullopt, {}, {}};
  result.trace.push_back("prepare |0^" + std::to_string(n) + ">");
  auto state = hadamard_all(make_basis_state(n, 0));
  result.trace.push_back("apply H^" + std::to_string(n));
  state = oracle.apply_phase(state);
  result.trace.push_back("query phase oracle");
  state = hadamard_all(state);
  result.trace.push_back("apply H^" + std::to_string(n));
  auto dist = measure_all(state);
  const double p0 = dist.probability(0);
  result.trace.push_back("p(0...0) = " + std::to_string(p0));
  result.oracle_calls = oracle.queries();
  result.zero_probability = p0;
  result.distribution = std::move(dist);
  if (p0 > 1.0 - kVerdictTolerance) {
    result.verdict = Verdict::Constant;
  } else if (p0 < kVerdictTolerance) {
    result.verdict = Verdict::Balanced;
  } else {
    throw PromiseViolation("promise violated: all-zero outcome probability " + std::to_string(p0) +
                           " is neither 0 nor 1, so f is neither constant nor balanced");
  }
  return result;
}

ComplexBitOracle::ComplexBitOracle(const BooleanFunction& f) : arity_(f.arity()) {
  if (arity_ == 1) {
    lead_sign_ = phase_sign(f(0));
    conj_first_ = phase_sign(f(0) ^ f(1));
    conj_second_ = 1;
  } else if (arity_ == 2) {
    lead_sign_ = phase_sign(f(0));
    conj_first_ = phase_sign(f(0) ^ f(2));
    conj_second_ = phase_sign(f(2) ^ f(3));
  } else {
    throw InvalidArgument("complex-bit black boxes exist for arity 1 and 2 only");
  }
}

ComplexBit ComplexBitOracle::query(ComplexBit z) const {
  if (arity_ != 1) throw InvalidArgument("single complex-bit query on an arity-2 black box");
  queries_.fetch_add(1, std::memory_order_relaxed);
  const Complex w(z.value.real(), conj_first_ * z.value.imag());
  return {static_cast<double>(lead_sign_) * w};
}

std::array<ComplexBit, 2> ComplexBitOracle::query(ComplexBit z1, ComplexBit z2) const {
  if (arity_ != 2) throw InvalidArgument("two complex-bit query on an arity-1 black box");
  queries_.fetch_add(1, std::memory_order_relaxed);
  const Complex w1(z1.value.real(), conj_first_ * z1.value.imag());
  const Complex w2(z2.value.real(), conj_second_ * z2.value.imag());
  return {ComplexBit{static_cast<double>(lead_sign_) * w1}, ComplexBit{w2}};
}

SolveResult solve_deutsch_classical(const BooleanFunction& f) {
  if (f.arity() != 1) throw InvalidArgument("the complex-bit solver for one input bit needs arity 1");
  const ComplexBitOracle box(f);
  const Complex z(1.0, 1.0);
  const Complex w = 0.5 * z * box.query({z}).value;

  SolveResult result{Verdict::Constant, std::nullopt, box.queries(), std::nullopt, std::nullopt, {}, {}};
  result.complex_outputs = {w};
  result.trace.push_back("query C_f(1 + i)");
  result.trace.push_back("w = z C_f(z) / 2 = " + format_complex(w));
  if (is_imaginary(w)) {
    // +i: f = 0, -i: f = 1
    result.verdict = Verdict::Constant;
    result.identified_function = BooleanFunction::constant(1, w.imag() < 0);
  } else if (is_real(w)) {
    // +1: f = (0, 1), -1: f = (1, 0)
    result.verdict = Verdict::Balanced;
    const std::uint8_t f0 = w.real() < 0 ? 1 : 0;
    result.identified_function = BooleanFunction(1, {f0, static_cast<std::uint8_t>(f0 ^ 1u)});
  } else {
    throw NumericalFailure("complex-bit output " + format_complex(w) + " is neither real nor imaginary");
  }
  return result;
}

SolveResult solve_dj2_classical(const BooleanFunction& f) {
  if (f.arity() != 2) throw InvalidArgument("the two complex-bit solver needs arity 2");
  const ComplexBitOracle box(f);
  const Complex z(1.0, 1.0);
  const auto out = box.query({z}, {z});
  const Complex w1 = 0.5 * z * out[0].value;
  const Complex w2 = 0.5 * z * out[1].value;

  SolveResult result{Verdict::Constant, std::nullopt, box.queries(), std::nullopt, std::nullopt, {}, {}};
  result.complex_outputs = {w1, w2};
  result.trace.push_back("query C_f(1 + i, 1 + i)");
  result.trace.push_back("w1 = " + format_complex(w1) + ", w2 = " + format_complex(w2));

  auto purity = [](Complex w) {
    if (is_imaginary(w)) return 0;
    if (is_real(w)) return 1;
    throw NumericalFailure("complex-bit output " + format_complex(w) + " is neither real nor imaginary");
  };
  const int d1 = purity(w1);  // f(00) xor f(10)
  const int d2 = purity(w2);  // f(10) xor f(11)
  const double lead = d1 == 0 ? w1.imag() : w1.real();
  const std::uint8_t f00 = lead < 0 ? 1 : 0;
  const std::uint8_t f10 = f00 ^ static_cast<std::uint8_t>(d1);
  const std::uint8_t f11 = f10 ^ static_cast<std::uint8_t>(d2);
  // Valid two-bit functions have even weight.
  const std::uint8_t f01 = f00 ^ f10 ^ f11;
  BooleanFunction decoded(2, {f00, f01, f10, f11});
  result.verdict = (d1 == 0 && d2 == 0) ? Verdict::Constant : Verdict::Balanced;

  if (decoded != f) {
    throw PromiseViolation("promise violated: decoded function " + decoded.to_string() +
                           " does not match the black box " + f.to_string());
  }
  result.identified_function = std::move(decoded);
  return result;
}

ClassicalVectorOracle::ClassicalVectorOracle(std::vector<Matrix2> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("product oracle needs at least one factor");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (!(unitarity_error(factors_[i]) < kUnitaryTolerance)) {
      throw InvalidArgument("oracle factor " + std::to_string(i) + " is not unitary");
    }
  }
}

ClassicalVectorOracle::ClassicalVectorOracle(const ClassicalVectorOracle& other)
    : factors_(other.factors_), queries_(other.queries()) {}

std::vector<Qubit> ClassicalVectorOracle::query(const std::vector<Qubit>& register_state) const {
  if (register_state.size() != factors_.size()) {
    throw InvalidArgument("register width does not match the oracle");
  }
  queries_.fetch_add(1, std::memory_order_relaxed);
  std::vector<Qubit> out(register_state.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = dequant::apply(factors_[i], register_state[i]);
  return out;
}

ProductOracleOutcome extract_product_oracle(const BooleanFunction& f) {
  if (!is_valid(f)) throw PromiseViolation("promise violated: f is neither constant nor balanced");
  const auto outcome = factor_product_state(oracle_output_state(f));
  if (const auto* e = std::get_if<Entangled>(&outcome)) return *e;
  const auto& prod = std::get<ProductFactorization>(outcome);

  const double h = 1.0 / std::sqrt(2.0);
  // U = [phi, phi_perp] [|+>, |->]^dagger; [|+>,|->] is the real symmetric H.
  const Matrix2 hadamard = {{{h, h}, {h, -h}}};
  std::vector<Matrix2> factors;
  for (std::size_t q = 0; q < prod.factors.size(); ++q) {
    Qubit phi = prod.factors[q];
    if (q == 0) {
      phi[0] *= prod.global_phase;
      phi[1] *= prod.global_phase;
    }
    const Matrix2 images = {{{phi[0], std::conj(phi[1])}, {phi[1], -std::conj(phi[0])}}};
    factors.push_back(multiply(images, hadamard));
  }
  return ClassicalVectorOracle(std::move(factors));
}

Flow deutsch_jozsa_flow(unsigned n) {
  Flow flow{n, 0, {}};
  flow.steps.push_back(LocalGate{std::nullopt, hadamard_matrix()});
  flow.steps.push_back(OracleQuery{});
  flow.steps.push_back(LocalGate{std::nullopt, hadamard_matrix()});
  return flow;
}

MeasurementDistribution run_dequantised(const ClassicalVectorOracle& oracle, const Flow& flow) {
  const unsigned n = flow.num_qubits;
  if (n != oracle.num_qubits()) throw InvalidArgument("flow width does not match the oracle");
  if (n > 62) throw InvalidArgument("flow too wide");
  std::vector<Qubit> reg(n);
  for (unsigned q = 0; q < n; ++q) {
    const bool bit = (flow.initial >> (n - 1 - q)) & 1u;
    reg[q] = bit ? Qubit{0.0, 1.0} : Qubit{1.0, 0.0};
  }
  for (const auto& step : flow.steps) {
    if (const auto* g = std::get_if<LocalGate>(&step)) {
      if (unitarity_error(g->matrix) >= kUnitaryTolerance) {
        throw InvalidArgument("flow gate is not unitary");
      }
      if (g->qubit) {
        if (*g->qubit >= n) throw InvalidArgument("flow gate qubit out of range");
        reg[*g->qubit] = dequant::apply(g->matrix, reg[*g->qubit]);
      } else {
        for (auto& q : reg) q = dequant::apply(g->matrix, q);
      }
    } else {
      reg = oracle.query(reg);
    }
  }
  if (n > max_qubits()) throw ResourceLimit("joint distribution exceeds the qubit ceiling");
  std::vector<double> probs(std::size_t{1} << n, 1.0);
  for (unsigned q = 0; q < n; ++q) {
    const double p0 = std::norm(reg[q][0]);
    const double p1 = std::norm(reg[q][1]);
    const double total = p0 + p1;
    const std::size_t mask = std::size_t{1} << (n - 1 - q);
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] *= ((i & mask) ? p1 : p0) / total;
  }
  return MeasurementDistribution(n, std::move(probs));
}

MeasurementDistribution run_state_vector(const ClassicalVectorOracle& oracle, const Flow& flow,
                                         std::uint64_t& queries) {
  const unsigned n = flow.num_qubits;
  if (n != oracle.num_qubits()) throw InvalidArgument("flow width does not match the oracle");
  if (n > 12) throw ResourceLimit("dense oracle simulation is limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << n;

  // Dense Kronecker product, row-major, qubit 0 most significant.
  std::vector<Complex> dense(dim * dim, Complex(1.0, 0.0));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex v = 1.0;
      for (unsigned q = 0; q < n; ++q) {
        const unsigned shift = n - 1 - q;
        v *= oracle.factors()[q][(r >> shift) & 1u][(c >> shift) & 1u];
      }
      dense[r * dim + c] = v;
    }
  }

  StateVector state = make_basis_state(n, flow.initial);
  for (const auto& step : flow.steps) {
    if (const auto* g = std::get_if<LocalGate>(&step)) {
      if (g->qubit) {
        state = apply_local_unitary(state, *g->qubit, g->matrix);
      } else {
        for (unsigned q = 0; q < n; ++q) state = apply_local_unitary(state, q, g->matrix);
      }
    } else {
      ++queries;
      const auto in = state.amplitudes();
      std::vector<Complex> out(dim);
      for (std::size_t r = 0; r < dim; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < dim; ++c) acc += dense[r * dim + c] * in[c];
        out[r] = acc;
      }
      state = StateVector::from_amplitudes(std::move(out));
    }
  }
  return measure_all(state);
}

double distribution_distance(const MeasurementDistribution& p, const MeasurementDistribution& q) {
  if (p.width() != q.width()) throw InvalidArgument("distributions have different outcome spaces");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p.probability(i) - q.probability(i));
  return 0.5 * acc;
}

Matrix2 random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double a, b, c, d, norm;
  do {
    a = g(rng);
    b = g(rng);
    c = g(rng);
    d = g(rng);
    norm = std::sqrt(a * a + b * b + c * c + d * d);
  } while (norm < 1e-6);
  a /= norm;
  b /= norm;
  c /= norm;
  d /= norm;
  return {{{Complex(a, b), Complex(c, d)}, {Complex(-c, d), Complex(a, -b)}}};
}

}  // namespace dequant
