// oracle.hpp
// Boolean functions, promise classification and the quantum black box in
// its (n+1)-qubit f-controlled-NOT form and its n-qubit phase form.

#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dequant/qstate.hpp"

namespace dequant {

// Truth table of f : {0,1}^n -> {0,1}; table[i] = f(x) for the big-endian
// string x encoded by i.
class BooleanFunction {
 public:
  BooleanFunction(unsigned n, std::vector<std::uint8_t> table);
  // Builds from the low 2^n bits of `bits`, table[i] = bit (2^n - 1 - i).
  // Convenient for n <= 6.
  static BooleanFunction from_bits(unsigned n, std::uint64_t bits);
  static BooleanFunction constant(unsigned n, bool value);

  unsigned arity() const { return n_; }
  std::size_t size() const { return table_.size(); }
  bool operator()(std::size_t x) const { return table_[x] != 0; }
  const std::vector<std::uint8_t>& table() const { return table_; }
  std::size_t ones() const;

  // "0011"-style rendering, table[0] first.
  std::string to_string() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;
  friend auto operator<=>(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  unsigned n_;
  std::vector<std::uint8_t> table_;
};

enum class FunctionKind { Constant, Balanced, Invalid };

struct Classification {
  FunctionKind kind;
  std::size_t ones_count;
};

std::string_view to_string(FunctionKind kind);

Classification classify(const BooleanFunction& f);
inline bool is_valid(const BooleanFunction& f) { return classify(f).kind != FunctionKind::Invalid; }

BooleanFunction negate(const BooleanFunction& f);

// |x> -> (-1)^{f(x)} |x> on an n-qubit state. Exact-sign inputs stay exact.
StateVector apply_phase_oracle(const BooleanFunction& f, const StateVector& s);

// |x>|y> -> |x>|y xor f(x)> on an (n+1)-qubit state.
StateVector apply_xor_oracle(const BooleanFunction& f, const StateVector& s);

// Accepts a binary string ("0011") of power-of-two length >= 2, or a
// 0x-prefixed hex string. Hex is read big-endian (first bit = f(0...0)); with
// `declared_n` the table is the trailing 2^n bits and any leading bits must be
// zero, otherwise n = log2(4 * digit count).
BooleanFunction parse_truth_table(std::string_view text,
                                  std::optional<unsigned> declared_n = std::nullopt);

// Black-box wrapper around f. Every apply call is one query; the counter is
// atomic so a shared oracle may be queried from several threads.
class Oracle {
 public:
  explicit Oracle(BooleanFunction f) : f_(std::move(f)) {}
  Oracle(const Oracle& other) : f_(other.f_), queries_(other.queries()) {}
  Oracle& operator=(const Oracle&) = delete;

  unsigned arity() const { return f_.arity(); }
  StateVector apply_phase(const StateVector& s) const;
  StateVector apply_xor(const StateVector& s) const;
  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }

 private:
  BooleanFunction f_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

}  // namespace dequant
