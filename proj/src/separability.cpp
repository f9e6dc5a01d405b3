#include "dequant/separability.hpp"

#include <algorithm>
#include <cmath>

#include "dequant/error.hpp"

namespace dequant {

namespace {

// Largest-pivot rank-1 test on a rows x cols matrix given by an accessor.
// Returns false for rank >= 2; throws for an all-zero matrix.
template <typename At>
bool rank_one(std::size_t rows, std::size_t cols, At at, std::size_t* pivot_col = nullptr) {
  std::size_t pr = 0;
  std::size_t pc = 0;
  double best = -1.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double mag = std::abs(at(r, c));
      if (mag > best) {
        best = mag;
        pr = r;
        pc = c;
      }
    }
  }
  if (!(best > kZeroAmplitude)) throw InvalidArgument("zero-norm block: malformed state");
  if (pivot_col) *pivot_col = pc;
  const Complex pivot = at(pr, pc);
  const double tol = kRankTolerance * best;
  for (std::size_t r = 0; r < rows; ++r) {
    if (r == pr) continue;
    const Complex factor = at(r, pc) / pivot;
    for (std::size_t c = 0; c < cols; ++c) {
      if (std::abs(at(r, c) - factor * at(pr, c)) > tol) return false;
    }
  }
  return true;
}

// Sign matrices have no zero entries, so rank 1 means every row is +- row 0.
template <typename At>
bool sign_rank_one(std::size_t rows, std::size_t cols, At at) {
  for (std::size_t r = 1; r < rows; ++r) {
    const int rel = at(r, 0) * at(0, 0);
    for (std::size_t c = 1; c < cols; ++c) {
      if (at(r, c) * at(0, c) != rel) return false;
    }
  }
  return true;
}

// Rotates q so its first component above tolerance is real positive and
// returns the removed phase.
Complex strip_phase(Qubit& q) {
  const std::size_t lead = std::abs(q[0]) > kRankTolerance ? 0 : 1;
  const double mag = std::abs(q[lead]);
  if (mag == 0.0) return 1.0;
  const Complex phase = q[lead] / mag;
  q[0] *= std::conj(phase);
  q[1] *= std::conj(phase);
  q[lead] = Complex(std::abs(q[lead]), 0.0);
  return phase;
}

FactorOutcome factor_signs(std::span<const std::int8_t> signs, unsigned n) {
  const double h = 1.0 / std::sqrt(2.0);
  ProductFactorization out;
  std::vector<std::int8_t> cur(signs.begin(), signs.end());
  for (unsigned q = 0; q + 1 < n; ++q) {
    const std::size_t half = cur.size() / 2;
    const int rel = cur[0] * cur[half];
    for (std::size_t j = 1; j < half; ++j) {
      if (cur[j] * cur[half + j] != rel) return Entangled{q};
    }
    out.factors.push_back({Complex(h, 0.0), Complex(rel * h, 0.0)});
    cur.resize(half);
  }
  out.factors.push_back({Complex(h, 0.0), Complex(cur[0] * cur[1] * h, 0.0)});
  out.global_phase = Complex(cur[0], 0.0);
  return out;
}

FactorOutcome factor_general(std::vector<Complex> amps, unsigned n) {
  ProductFactorization out;
  for (unsigned q = 0; q + 1 < n; ++q) {
    const std::size_t half = amps.size() / 2;
    std::size_t pc = 0;
    const bool ok = rank_one(
        2, half, [&](std::size_t r, std::size_t c) { return amps[r * half + c]; }, &pc);
    if (!ok) return Entangled{q};
    Qubit u{amps[pc], amps[half + pc]};
    const double un = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
    u[0] /= un;
    u[1] /= un;
    strip_phase(u);
    std::vector<Complex> rest(half);
    for (std::size_t c = 0; c < half; ++c) {
      rest[c] = (std::conj(u[0]) * amps[c] + std::conj(u[1]) * amps[half + c]);
    }
    out.factors.push_back(u);
    amps = std::move(rest);
  }
  Qubit last{amps[0], amps[1]};
  const double ln = std::sqrt(std::norm(last[0]) + std::norm(last[1]));
  if (!(ln > kZeroAmplitude)) throw InvalidArgument("zero-norm quotient: malformed state");
  last[0] /= ln;
  last[1] /= ln;
  out.global_phase = strip_phase(last);
  out.factors.push_back(last);
  return out;
}

void validate_subset(std::span<const unsigned> subset, unsigned n, std::vector<bool>& in_subset) {
  in_subset.assign(n, false);
  for (unsigned q : subset) {
    if (q >= n) throw InvalidArgument("subset qubit index out of range");
    if (in_subset[q]) throw InvalidArgument("duplicate qubit in subset");
    in_subset[q] = true;
  }
  if (subset.empty() || subset.size() >= n) {
    throw InvalidArgument("bipartition subset must be nonempty and proper");
  }
}

}  // namespace

PairProductReport pair_product_invariant(const StateVector& s) {
  const unsigned n = s.num_qubits();
  if (n < 2) throw InvalidArgument("pair product invariance needs at least 2 qubits");
  PairProductReport report{true, true, s.is_exact_sign(), {}};

  if (s.is_exact_sign()) {
    const auto signs = s.signs();
    const double unit = std::ldexp(1.0, -static_cast<int>(n));  // |alpha|^2
    for (unsigned k = 2; k <= n; ++k) {
      const std::size_t K = std::size_t{1} << k;
      const int ref = signs[0] * signs[K - 1];
      PairProductLevel level{k, true, Complex(ref * unit, 0.0), std::nullopt};
      for (std::size_t i = 1; i < K / 2; ++i) {
        if (signs[i] * signs[K - i - 1] != ref) {
          level.consistent = false;
          level.violation = PairViolation{0, K - 1, i, K - i - 1};
          break;
        }
      }
      report.invariant = report.invariant && level.consistent;
      report.levels.push_back(level);
    }
    return report;
  }

  const auto amps = s.amplitudes();
  for (const auto& a : amps) {
    if (std::abs(a) < kZeroAmplitude) {
      report.precondition_met = false;
      break;
    }
  }
  for (unsigned k = 2; k <= n; ++k) {
    const std::size_t K = std::size_t{1} << k;
    const Complex ref = amps[0] * amps[K - 1];
    PairProductLevel level{k, true, ref, std::nullopt};
    for (std::size_t i = 1; i < K / 2; ++i) {
      const Complex p = amps[i] * amps[K - i - 1];
      const double scale = std::max(std::abs(ref), std::abs(p));
      if (std::abs(p - ref) > kRankTolerance * scale) {
        level.consistent = false;
        level.violation = PairViolation{0, K - 1, i, K - i - 1};
        break;
      }
    }
    report.invariant = report.invariant && level.consistent;
    report.levels.push_back(level);
  }
  return report;
}

FactorOutcome factor_product_state(const StateVector& s) {
  const unsigned n = s.num_qubits();
  if (s.is_exact_sign()) return factor_signs(s.signs(), n);
  return factor_general(s.amplitudes(), n);
}

StateVector reconstruct(const ProductFactorization& p) {
  if (p.factors.empty()) throw InvalidArgument("empty factorization");
  const double h = 1.0 / std::sqrt(2.0);
  const bool sign_factors =
      (p.global_phase == Complex(1.0, 0.0) || p.global_phase == Complex(-1.0, 0.0)) &&
      std::all_of(p.factors.begin(), p.factors.end(), [h](const Qubit& q) {
        return q[0] == Complex(h, 0.0) && (q[1] == Complex(h, 0.0) || q[1] == Complex(-h, 0.0));
      });
  if (sign_factors) {
    std::vector<std::int8_t> signs{static_cast<std::int8_t>(p.global_phase.real())};
    for (const auto& q : p.factors) {
      const std::int8_t t = q[1].real() > 0 ? 1 : -1;
      std::vector<std::int8_t> next(signs.size() * 2);
      for (std::size_t i = 0; i < signs.size(); ++i) {
        next[2 * i] = signs[i];
        next[2 * i + 1] = static_cast<std::int8_t>(signs[i] * t);
      }
      signs = std::move(next);
    }
    return StateVector::from_signs(std::move(signs));
  }
  std::vector<Complex> amps{p.global_phase};
  for (const auto& q : p.factors) {
    std::vector<Complex> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * q[0];
      next[2 * i + 1] = amps[i] * q[1];
    }
    amps = std::move(next);
  }
  return StateVector::normalized(std::move(amps));
}

bool qubit_separable(const StateVector& s, unsigned qubit) {
  const unsigned n = s.num_qubits();
  if (qubit >= n) throw InvalidArgument("qubit index out of range");
  if (n == 1) return true;
  const std::size_t block = std::size_t{1} << (n - 1 - qubit);
  if (s.is_exact_sign()) {
    // Blocks pair up as (x, +x) throughout or (x, -x) throughout.
    const auto signs = s.signs();
    const int rel = signs[0] * signs[block];
    for (std::size_t base = 0; base < signs.size(); base += 2 * block) {
      for (std::size_t j = 0; j < block; ++j) {
        if (signs[base + j] * signs[base + block + j] != rel) return false;
      }
    }
    return true;
  }
  const auto amps = s.amplitudes();
  const std::size_t cols = amps.size() / 2;
  // Column c enumerates the other qubits: high part selects the super-block.
  auto index = [block](std::size_t r, std::size_t c) {
    return (c / block) * 2 * block + r * block + (c % block);
  };
  return rank_one(2, cols, [&](std::size_t r, std::size_t c) { return amps[index(r, c)]; });
}

bool bipartition_separable(const StateVector& s, std::span<const unsigned> subset) {
  const unsigned n = s.num_qubits();
  std::vector<bool> in_subset;
  validate_subset(subset, n, in_subset);
  std::vector<unsigned> rest;
  for (unsigned q = 0; q < n; ++q) {
    if (!in_subset[q]) rest.push_back(q);
  }
  const std::size_t rows = std::size_t{1} << subset.size();
  const std::size_t cols = std::size_t{1} << rest.size();
  // Scatter tables: contribution of each row/column bit pattern to the index.
  auto scatter = [n](std::span<const unsigned> qubits) {
    std::vector<std::size_t> offs(std::size_t{1} << qubits.size(), 0);
    for (std::size_t v = 0; v < offs.size(); ++v) {
      std::size_t idx = 0;
      for (std::size_t b = 0; b < qubits.size(); ++b) {
        if ((v >> (qubits.size() - 1 - b)) & 1u) idx |= std::size_t{1} << (n - 1 - qubits[b]);
      }
      offs[v] = idx;
    }
    return offs;
  };
  const auto row_off = scatter(subset);
  const auto col_off = scatter(rest);
  if (s.is_exact_sign()) {
    const auto signs = s.signs();
    return sign_rank_one(rows, cols, [&](std::size_t r, std::size_t c) {
      return static_cast<int>(signs[row_off[r] | col_off[c]]);
    });
  }
  const auto amps = s.amplitudes();
  return rank_one(rows, cols,
                  [&](std::size_t r, std::size_t c) { return amps[row_off[r] | col_off[c]]; });
}

bool fully_separable(const StateVector& s) {
  if (s.num_qubits() == 1) return true;
  const auto report = pair_product_invariant(s);
  if (report.precondition_met) return report.invariant;
  return is_product(factor_product_state(s));
}

bool n2_separability_condition(const BooleanFunction& f) {
  if (f.arity() != 2) throw InvalidArgument("the two-bit separability condition needs arity 2");
  return (f(0) ^ f(3)) == (f(1) ^ f(2));
}

EntanglementProfile entanglement_profile(const StateVector& s, unsigned max_cut_scan_qubits) {
  const unsigned n = s.num_qubits();
  EntanglementProfile profile;
  profile.qubit_separable.resize(n);
  bool any = false;
  for (unsigned q = 0; q < n; ++q) {
    profile.qubit_separable[q] = qubit_separable(s, q);
    any = any || profile.qubit_separable[q];
  }
  profile.no_qubit_separable = !any;
  if (n >= 2 && n <= max_cut_scan_qubits) {
    bool cut_found = false;
    const std::size_t others = std::size_t{1} << (n - 1);
    for (std::size_t mask = 0; mask + 1 < others; ++mask) {
      std::vector<unsigned> subset{0};
      for (unsigned q = 1; q < n; ++q) {
        if ((mask >> (q - 1)) & 1u) subset.push_back(q);
      }
      if (bipartition_separable(s, subset)) {
        cut_found = true;
        profile.separable_cuts.push_back(subset);
      }
    }
    profile.no_cut_separable = !cut_found;
  }
  return profile;
}

StateVector oracle_output_state(const BooleanFunction& f) {
  return apply_phase_oracle(f, hadamard_all(make_basis_state(f.arity(), 0)));
}

}  // namespace dequant
