#include "dequant/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "dequant/census.hpp"
#include "dequant/error.hpp"
#include "dequant/optical.hpp"
#include "dequant/oracle.hpp"
#include "dequant/qstate.hpp"
#include "dequant/separability.hpp"
#include "dequant/solver.hpp"

namespace dequant::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failed checks; the first few are kept for the detail line.
class Checks {
 public:
  void require(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (messages_.size() < 3) messages_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return failed_ == 0; }
  std::string detail() const {
    std::ostringstream os;
    if (failed_ == 0) {
      os << total_ << " checks";
    } else {
      os << failed_ << "/" << total_ << " checks failed";
      for (const auto& m : messages_) os << "; " << m;
    }
    for (const auto& n : notes_) os << "; " << n;
    return os.str();
  }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

Complex gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

// Unit qubit with both components of magnitude >= min_mag.
Qubit random_qubit(std::mt19937_64& rng, double min_mag) {
  for (;;) {
    Complex a = gaussian_complex(rng);
    Complex b = gaussian_complex(rng);
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    if (std::abs(a) >= min_mag && std::abs(b) >= min_mag) return {a, b};
  }
}

std::vector<Complex> kron_qubits(const std::vector<Qubit>& qs) {
  std::vector<Complex> v{1.0};
  for (const auto& q : qs) {
    std::vector<Complex> next(v.size() * 2);
    for (std::size_t i = 0; i < v.size(); ++i) {
      next[2 * i] = v[i] * q[0];
      next[2 * i + 1] = v[i] * q[1];
    }
    v = std::move(next);
  }
  return v;
}

StateVector random_product_state(std::mt19937_64& rng, unsigned n, double min_mag) {
  std::vector<Qubit> qs;
  for (unsigned i = 0; i < n; ++i) qs.push_back(random_qubit(rng, min_mag));
  return StateVector::normalized(kron_qubits(qs));
}

StateVector random_state(std::mt19937_64& rng, unsigned n) {
  std::vector<Complex> v(std::size_t{1} << n);
  for (auto& a : v) a = gaussian_complex(rng);
  return StateVector::normalized(std::move(v));
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    m = std::max(m, std::abs(a.amplitude(i) - b.amplitude(i)));
  }
  return m;
}

Verdict expected_verdict(const BooleanFunction& f) {
  return classify(f).kind == FunctionKind::Constant ? Verdict::Constant : Verdict::Balanced;
}

std::string name(const BooleanFunction& f) { return f.to_string(); }

CriterionResult n1_quantum(const Options& opt) {
  Checks c;
  double slowest = 0.0;
  for (std::uint64_t bits = 0; bits < 4; ++bits) {
    const auto f = BooleanFunction::from_bits(1, bits);
    const bool constant = classify(f).kind == FunctionKind::Constant;
    const bool expect_constant = opt.inject_fault ? !constant : constant;

    const auto t0 = Clock::now();
    const auto r = solve_dj_quantum(f);
    slowest = std::max(slowest, seconds_since(t0));

    const double p0 = r.zero_probability.value_or(-1.0);
    c.require(p0 == 0.0 || p0 == 1.0, name(f) + ": p0 not exactly 0 or 1");
    c.require(p0 == (expect_constant ? 1.0 : 0.0), name(f) + ": wrong p0");
    c.require((r.verdict == Verdict::Constant) == expect_constant, name(f) + ": wrong verdict");
    c.require(r.oracle_calls == 1, name(f) + ": oracle calls != 1");
    c.require(oracle_output_state(f).is_exact_sign(), name(f) + ": oracle state left the sign path");
  }
  c.require(slowest < 1e-3, "solve took " + fmt_seconds(slowest));
  if (opt.inject_fault) c.note("fault injected");
  return {1, "n=1 quantum", c.passed(), c.detail(), 0.0};
}

CriterionResult n1_classical(const Options&) {
  Checks c;
  const Complex i(0.0, 1.0);
  const std::pair<std::uint64_t, Complex> cases[] = {{0b00, i}, {0b11, -i}, {0b01, 1.0}, {0b10, -1.0}};
  for (const auto& [bits, w] : cases) {
    const auto f = BooleanFunction::from_bits(1, bits);
    const auto r = solve_deutsch_classical(f);
    c.require(r.complex_outputs.size() == 1 && r.complex_outputs[0] == w, name(f) + ": output mismatch");
    c.require(r.identified_function == f, name(f) + ": not identified");
    c.require(r.verdict == expected_verdict(f), name(f) + ": wrong verdict");
    c.require(r.oracle_calls == 1, name(f) + ": oracle calls != 1");
  }
  return {2, "n=1 classical", c.passed(), c.detail(), 0.0};
}

CriterionResult n2_all(const Options&) {
  Checks c;
  const Complex i(0.0, 1.0);
  std::size_t valid = 0;
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const auto f = BooleanFunction::from_bits(2, bits);
    const auto state = oracle_output_state(f);
    if (!is_valid(f)) {
      c.require(!n2_separability_condition(f), name(f) + ": invalid but condition holds");
      c.require(!fully_separable(state), name(f) + ": invalid but separable");
      bool threw = false;
      try {
        solve_dj2_classical(f);
      } catch (const PromiseViolation&) {
        threw = true;
      }
      c.require(threw, name(f) + ": invalid input not rejected");
      continue;
    }
    ++valid;
    c.require(n2_separability_condition(f), name(f) + ": condition fails");
    c.require(is_product(factor_product_state(state)), name(f) + ": oracle state not a product");
    c.require(pair_product_invariant(state).invariant, name(f) + ": PPI fails");

    const bool f00 = f(0), f10 = f(2), f11 = f(3);
    const Complex w1 = (f00 ? -1.0 : 1.0) * (f00 == f10 ? i : Complex(1.0));
    const Complex w2 = f10 == f11 ? i : Complex(1.0);
    const auto r = solve_dj2_classical(f);
    c.require(r.complex_outputs.size() == 2 && r.complex_outputs[0] == w1 && r.complex_outputs[1] == w2,
              name(f) + ": outputs mismatch");
    c.require(r.identified_function == f, name(f) + ": not identified");
    c.require(r.verdict == solve_dj_quantum(f).verdict, name(f) + ": disagrees with quantum");
    c.require(r.oracle_calls == 1, name(f) + ": oracle calls != 1");
  }
  c.require(valid == 8, "expected 8 valid functions");
  return {3, "n=2 separable and classical", c.passed(), c.detail(), 0.0};
}

CriterionResult n3_example(const Options&) {
  Checks c;
  const auto f = entangled_example_n3();
  const auto s = oracle_output_state(f);
  const auto rep = pair_product_invariant(s);
  c.require(!rep.invariant, "invariant holds");
  c.require(rep.exact, "not decided exactly");
  c.require(!rep.levels.empty() && rep.levels[0].k == 2 && !rep.levels[0].consistent,
            "level k=2 consistent");
  if (!rep.levels.empty() && rep.levels[0].violation) {
    const auto& v = *rep.levels[0].violation;
    c.require(v.a == 0 && v.a_partner == 3 && v.b == 1 && v.b_partner == 2, "wrong violating pair");
  } else {
    c.require(false, "no violation reported at k=2");
  }
  c.require(s.amplitude(0) * s.amplitude(3) != s.amplitude(1) * s.amplitude(2),
            "alpha0 alpha3 == alpha1 alpha2");
  c.require(!is_product(factor_product_state(s)), "factorization succeeds");
  return {4, "n=3 entangled example", c.passed(), c.detail(), 0.0};
}

CriterionResult census(const Options& opt) {
  Checks c;
  const unsigned a[] = {4, 8, 16, 32};
  const unsigned b[] = {4, 8, 72, 12872};
  const mpq_class q[] = {mpq_class(1), mpq_class(1), mpq_class(2, 9), mpq_class(4, 1609)};
  const unsigned top = std::min(4u, opt.max_n);
  for (unsigned n = 1; n <= top; ++n) {
    const auto t0 = Clock::now();
    const auto brute = brute_force_census(n, 1);
    const double single = seconds_since(t0);
    const auto formula = formula_census(n, true);
    const std::string tag = "n=" + std::to_string(n);
    c.require(brute.separable_count == a[n - 1] && formula.separable_count == a[n - 1], tag + ": a_n");
    c.require(brute.valid_count == b[n - 1] && formula.valid_count == b[n - 1], tag + ": b_n");
    c.require(brute.fraction == q[n - 1] && formula.fraction == q[n - 1], tag + ": fraction");
    auto listed = *formula.separable_set;
    std::sort(listed.begin(), listed.end());
    c.require(brute.separable_set && *brute.separable_set == listed, tag + ": separable sets differ");
    if (n == 4) {
      c.require(single < 60.0, "n=4 single-threaded scan took " + fmt_seconds(single));
      const auto t1 = Clock::now();
      const auto parallel = brute_force_census(4, 4);
      const double four = seconds_since(t1);
      c.require(four < 15.0, "n=4 4-thread scan took " + fmt_seconds(four));
      c.require(parallel.separable_set == brute.separable_set && parallel.valid_count == brute.valid_count,
                "parallel scan disagrees");
      c.note("n=4 scan " + fmt_seconds(single) + " (1 thread), " + fmt_seconds(four) + " (4 threads)");
    }
  }
  if (top < 4) c.note("exhaustive scan capped at n=" + std::to_string(top));
  return {5, "census", c.passed(), c.detail(), 0.0};
}

CriterionResult witness(const Options&) {
  Checks c;
  const auto t0 = Clock::now();
  c.require(proposition_witness(3).to_string() == "00011101", "n=3 witness table");
  for (unsigned n = 3; n <= 12; ++n) {
    const auto f = proposition_witness(n);
    const std::string tag = "n=" + std::to_string(n);
    c.require(classify(f).kind == FunctionKind::Balanced, tag + ": not balanced");
    const auto profile = entanglement_profile(oracle_output_state(f), 6);
    c.require(profile.no_qubit_separable, tag + ": a qubit is separable");
    if (n <= 6) {
      c.require(profile.no_cut_separable == true, tag + ": a bipartition is separable");
    }
  }
  const double t = seconds_since(t0);
  c.require(t < 10.0, "took " + fmt_seconds(t));
  return {6, "maximally entangled witness", c.passed(), c.detail(), 0.0};
}

CriterionResult dequantisation(const Options&) {
  Checks c;
  std::mt19937_64 rng(7001);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(t % 6);
    std::vector<Matrix2> factors;
    for (unsigned q = 0; q < n; ++q) factors.push_back(random_su2(rng));

    Flow flow{n, std::uniform_int_distribution<std::uint64_t>(0, (1u << n) - 1)(rng), {}};
    flow.steps.push_back(LocalGate{std::nullopt, hadamard_matrix()});
    flow.steps.push_back(OracleQuery{});
    std::uniform_int_distribution<unsigned> pick(0, n - 1);
    for (int g = 0; g < 3; ++g) flow.steps.push_back(LocalGate{pick(rng), random_su2(rng)});
    std::uint64_t expected_queries = 1;
    if (t % 3 == 0) {
      flow.steps.push_back(OracleQuery{});
      ++expected_queries;
    }
    flow.steps.push_back(LocalGate{std::nullopt, hadamard_matrix()});

    const ClassicalVectorOracle per_qubit(factors);
    const ClassicalVectorOracle dense(factors);
    std::uint64_t dense_queries = 0;
    const auto p = run_dequantised(per_qubit, flow);
    const auto q = run_state_vector(dense, flow, dense_queries);
    const double tv = distribution_distance(p, q);
    worst = std::max(worst, tv);
    const std::string tag = "trial " + std::to_string(t);
    c.require(tv < 1e-9, tag + ": TV " + std::to_string(tv));
    c.require(per_qubit.queries() == dense_queries && dense_queries == expected_queries,
              tag + ": query counts differ");
  }
  std::ostringstream os;
  os << "worst TV " << worst;
  c.note(os.str());
  return {7, "general de-quantisation", c.passed(), c.detail(), 0.0};
}

CriterionResult optical_equivalence(const Options&) {
  Checks c;
  const auto t0 = Clock::now();
  for (std::uint64_t bits = 0; bits < 4; ++bits) {
    const auto f = BooleanFunction::from_bits(1, bits);
    const auto o = optical::optical_deutsch(f);
    const auto qr = solve_dj_quantum(f);
    c.require(o.verdict == qr.verdict, name(f) + ": optical verdict differs");
    c.require(distribution_distance(*o.distribution, *qr.distribution) < 1e-9,
              name(f) + ": distributions differ");
    c.require(o.oracle_calls == 1, name(f) + ": oracle calls != 1");
  }
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const auto f = BooleanFunction::from_bits(2, bits);
    if (!is_valid(f)) continue;
    const auto o = optical::optical_dj2(f);
    const auto qr = solve_dj_quantum(f);
    c.require(o.verdict == qr.verdict, name(f) + ": optical verdict differs");
    c.require(distribution_distance(*o.distribution, *qr.distribution) < 1e-9,
              name(f) + ": distributions differ");
    c.require(o.oracle_calls == 1, name(f) + ": oracle calls != 1");
  }
  std::mt19937_64 rng(8001);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Matrix2 u = random_su2(rng);
    try {
      const auto a = optical::decompose_su2(u);
      const double r = optical::phase_aligned_residual(optical::stack_matrix(a), u);
      worst = std::max(worst, r);
      c.require(r < 1e-8, "decomposition " + std::to_string(t) + " residual " + std::to_string(r));
    } catch (const Error& e) {
      c.require(false, "decomposition " + std::to_string(t) + ": " + e.what());
    }
  }
  const double secs = seconds_since(t0);
  c.require(secs < 30.0, "took " + fmt_seconds(secs));
  std::ostringstream os;
  os << "worst residual " << worst;
  c.note(os.str());
  return {8, "optical equivalence", c.passed(), c.detail(), 0.0};
}

CriterionResult cross_oracle(const Options& opt) {
  Checks c;
  const unsigned top = std::min(4u, opt.max_n);
  std::size_t states = 0;
  for (unsigned n = 2; n <= top; ++n) {
    const std::uint64_t tables = std::uint64_t{1} << (std::uint64_t{1} << n);
    for (std::uint64_t bits = 0; bits < tables; ++bits) {
      const auto f = BooleanFunction::from_bits(n, bits);
      if (!is_valid(f)) continue;
      const auto s = oracle_output_state(f);
      const auto g = StateVector::from_amplitudes(s.amplitudes());
      const bool prod = is_product(factor_product_state(s));
      c.require(pair_product_invariant(s).invariant == prod, name(f) + ": sign path disagrees");
      c.require(pair_product_invariant(g).invariant == prod && is_product(factor_product_state(g)) == prod,
                name(f) + ": float path disagrees");
      ++states;
    }
  }
  std::mt19937_64 rng(9001);
  std::size_t products = 0;
  for (int t = 0; t < 1000; ++t) {
    const unsigned n = 2 + static_cast<unsigned>(t % 4);
    StateVector s = t % 2 == 0 ? random_product_state(rng, n, 0.05) : random_state(rng, n);
    if (t % 10 == 5) {
      // A product with one amplitude's phase nudged: entangled, all nonzero.
      auto amps = random_product_state(rng, n, 0.05).amplitudes();
      amps.back() *= std::polar(1.0, 0.3);
      s = StateVector::normalized(std::move(amps));
    }
    const auto rep = pair_product_invariant(s);
    const bool prod = is_product(factor_product_state(s));
    products += prod ? 1 : 0;
    c.require(rep.precondition_met, "random state " + std::to_string(t) + ": zero amplitude");
    c.require(rep.invariant == prod, "random state " + std::to_string(t) + ": verdicts differ");
  }
  c.require(products > 0 && products < 1000, "random states did not exercise both verdicts");
  c.note(std::to_string(states) + " oracle states, 1000 random (" + std::to_string(products) +
         " products)");
  return {9, "cross-oracle separability", c.passed(), c.detail(), 0.0};
}

CriterionResult properties(const Options&) {
  Checks c;
  std::mt19937_64 rng(10001);

  for (unsigned n = 1; n <= 8; ++n) {
    const auto s = random_state(rng, n);
    const auto hh = hadamard_all(hadamard_all(s));
    c.require(max_abs_diff(hh, s) < 1e-12, "H involution n=" + std::to_string(n));
    c.require(std::abs(hadamard_all(s).norm() - 1.0) < 1e-12, "H norm n=" + std::to_string(n));
    const auto u = apply_local_unitary(s, n - 1, random_su2(rng));
    c.require(std::abs(u.norm() - 1.0) < 1e-12, "local unitary norm n=" + std::to_string(n));

    std::vector<std::int8_t> signs(std::size_t{1} << n);
    for (auto& x : signs) x = rng() % 2 ? 1 : -1;
    const auto sg = StateVector::from_signs(signs);
    const auto back = hadamard_all(hadamard_all(sg));
    c.require(back.is_exact_sign() && std::equal(back.signs().begin(), back.signs().end(), signs.begin()),
              "sign H involution n=" + std::to_string(n));
  }

  const auto minus = hadamard_all(make_basis_state(1, 1));
  auto xor_matches_phase = [&](const BooleanFunction& f, const StateVector& s) {
    const auto via_xor = apply_xor_oracle(f, tensor(s, minus));
    const auto via_phase = tensor(apply_phase_oracle(f, s), minus);
    return max_abs_diff(via_xor, via_phase) < 1e-12;
  };
  // Exhaustive over f and x for n <= 3; exhaustive over f on |+>^4; sampled f
  // (all x) for n = 5, 6.
  for (unsigned n = 1; n <= 6; ++n) {
    const auto plus = hadamard_all(make_basis_state(n, 0));
    std::vector<BooleanFunction> fs;
    if (n <= 4) {
      const std::uint64_t tables = std::uint64_t{1} << (std::uint64_t{1} << n);
      for (std::uint64_t bits = 0; bits < tables; ++bits) fs.push_back(BooleanFunction::from_bits(n, bits));
    } else {
      for (int t = 0; t < 32; ++t) fs.push_back(BooleanFunction::from_bits(n, rng()));
    }
    for (const auto& f : fs) {
      bool ok = xor_matches_phase(f, plus);
      if (n != 4) {
        for (std::size_t x = 0; ok && x < f.size(); ++x) ok = xor_matches_phase(f, make_basis_state(n, x));
      }
      c.require(ok, "phase/XOR mismatch for " + name(f));
    }
  }

  for (unsigned n = 1; n <= 6; ++n) {
    const auto f = BooleanFunction::from_bits(n, rng());
    const auto s = random_state(rng, n);
    const auto a = apply_phase_oracle(f, s);
    const auto b = apply_phase_oracle(negate(f), s);
    double m = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) m = std::max(m, std::abs(a.amplitude(i) + b.amplitude(i)));
    c.require(m < 1e-15, "negation law n=" + std::to_string(n));
    c.require(equal_up_to_global_phase(a, b, 1e-12), "negation phase n=" + std::to_string(n));
  }

  double worst = 1.0;
  for (int t = 0; t < 200; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(t % 6);
    const auto s = random_product_state(rng, n, t % 4 == 0 ? 0.0 : 0.05);
    const auto outcome = factor_product_state(s);
    if (!is_product(outcome)) {
      c.require(false, "random product state " + std::to_string(t) + " reported entangled");
      continue;
    }
    const double fid = fidelity(reconstruct(std::get<ProductFactorization>(outcome)), s);
    worst = std::min(worst, fid);
    c.require(fid > 1.0 - 1e-9, "roundtrip fidelity " + std::to_string(fid));
  }
  std::ostringstream os;
  os << "worst roundtrip fidelity 1 - " << (1.0 - worst);
  c.note(os.str());
  return {10, "property suites", c.passed(), c.detail(), 0.0};
}

using Runner = std::function<CriterionResult(const Options&)>;

const std::vector<Runner>& runners() {
  static const std::vector<Runner> all = {n1_quantum,    n1_classical, n2_all,
                                          n3_example,    census,       witness,
                                          dequantisation, optical_equivalence, cross_oracle,
                                          properties};
  return all;
}

}  // namespace

CriterionResult run_criterion(int id, const Options& options) {
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("no acceptance criterion " + std::to_string(id));
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = runners()[static_cast<std::size_t>(id - 1)](options);
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0.0};
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_all(const Options& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

}  // namespace dequant::acceptance
