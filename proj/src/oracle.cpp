#include "dequant/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "dequant/error.hpp"

namespace dequant {

namespace {

unsigned table_arity(std::size_t len) {
  if (len < 2 || (len & (len - 1)) != 0) {
    throw InvalidArgument("truth table length " + std::to_string(len) +
                          " is not a power of two >= 2");
  }
  unsigned n = 0;
  while ((std::size_t{1} << n) < len) ++n;
  return n;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

BooleanFunction::BooleanFunction(unsigned n, std::vector<std::uint8_t> table)
    : n_(n), table_(std::move(table)) {
  if (n_ == 0 || n_ > 30) throw InvalidArgument("function arity must be in [1, 30]");
  if (table_.size() != (std::size_t{1} << n_)) {
    throw InvalidArgument("truth table length does not equal 2^n");
  }
  for (auto b : table_) {
    if (b > 1) throw InvalidArgument("truth table entries must be 0 or 1");
  }
}

BooleanFunction BooleanFunction::from_bits(unsigned n, std::uint64_t bits) {
  if (n == 0 || n > 6) throw InvalidArgument("from_bits supports arity 1..6");
  const std::size_t len = std::size_t{1} << n;
  std::vector<std::uint8_t> table(len);
  for (std::size_t i = 0; i < len; ++i) table[i] = (bits >> (len - 1 - i)) & 1u;
  return BooleanFunction(n, std::move(table));
}

BooleanFunction BooleanFunction::constant(unsigned n, bool value) {
  if (n == 0 || n > 30) throw InvalidArgument("function arity must be in [1, 30]");
  return BooleanFunction(n, std::vector<std::uint8_t>(std::size_t{1} << n, value ? 1 : 0));
}

std::size_t BooleanFunction::ones() const {
  return static_cast<std::size_t>(std::count(table_.begin(), table_.end(), std::uint8_t{1}));
}

std::string BooleanFunction::to_string() const {
  std::string out(table_.size(), '0');
  for (std::size_t i = 0; i < table_.size(); ++i) out[i] = table_[i] ? '1' : '0';
  return out;
}

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Constant:
      return "Constant";
    case FunctionKind::Balanced:
      return "Balanced";
    case FunctionKind::Invalid:
      return "Invalid";
  }
  return "?";
}

Classification classify(const BooleanFunction& f) {
  const std::size_t ones = f.ones();
  const std::size_t len = f.size();
  if (ones == 0 || ones == len) return {FunctionKind::Constant, ones};
  if (ones == len / 2) return {FunctionKind::Balanced, ones};
  return {FunctionKind::Invalid, ones};
}

BooleanFunction negate(const BooleanFunction& f) {
  std::vector<std::uint8_t> table = f.table();
  for (auto& b : table) b ^= 1u;
  return BooleanFunction(f.arity(), std::move(table));
}

StateVector apply_phase_oracle(const BooleanFunction& f, const StateVector& s) {
  if (s.num_qubits() != f.arity()) {
    throw InvalidArgument("phase oracle arity " + std::to_string(f.arity()) +
                          " does not match a " + std::to_string(s.num_qubits()) + "-qubit state");
  }
  if (s.is_exact_sign()) {
    std::vector<std::int8_t> signs(s.signs().begin(), s.signs().end());
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (f(i)) signs[i] = static_cast<std::int8_t>(-signs[i]);
    }
    return StateVector::from_signs(std::move(signs));
  }
  auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (f(i)) amps[i] = -amps[i];
  }
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector apply_xor_oracle(const BooleanFunction& f, const StateVector& s) {
  if (s.num_qubits() != f.arity() + 1) {
    throw InvalidArgument("xor oracle of arity " + std::to_string(f.arity()) +
                          " needs a " + std::to_string(f.arity() + 1) + "-qubit state");
  }
  // Index layout is (x << 1) | y, so flipping y swaps index pairs (2x, 2x+1).
  if (s.is_exact_sign()) {
    std::vector<std::int8_t> signs(s.signs().begin(), s.signs().end());
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (f(x)) std::swap(signs[2 * x], signs[2 * x + 1]);
    }
    return StateVector::from_signs(std::move(signs));
  }
  auto amps = s.amplitudes();
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f(x)) std::swap(amps[2 * x], amps[2 * x + 1]);
  }
  return StateVector::from_amplitudes(std::move(amps));
}

BooleanFunction parse_truth_table(std::string_view text, std::optional<unsigned> declared_n) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidArgument("empty truth table");

  std::vector<std::uint8_t> bits;
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  if (hex) {
    for (char c : text.substr(2)) {
      const int v = hex_value(c);
      if (v < 0) throw InvalidArgument(std::string("illegal hex digit '") + c + "' in truth table");
      for (int b = 3; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
    }
    if (declared_n) {
      if (*declared_n == 0 || *declared_n > 30) throw InvalidArgument("declared arity out of range");
      const std::size_t len = std::size_t{1} << *declared_n;
      if (bits.size() < len) throw InvalidArgument("hex table too short for the declared arity");
      const std::size_t excess = bits.size() - len;
      if (std::any_of(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(excess),
                      [](std::uint8_t b) { return b != 0; })) {
        throw InvalidArgument("hex table has set bits beyond the declared arity");
      }
      bits.erase(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(excess));
    }
  } else {
    bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw InvalidArgument(std::string("illegal character '") + c + "' in truth table");
      }
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  }
  const unsigned n = table_arity(bits.size());
  if (!hex && declared_n && *declared_n != n) {
    throw InvalidArgument("truth table length does not match the declared arity");
  }
  return BooleanFunction(n, std::move(bits));
}

StateVector Oracle::apply_phase(const StateVector& s) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  return apply_phase_oracle(f_, s);
}

StateVector Oracle::apply_xor(const StateVector& s) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  return apply_xor_oracle(f_, s);
}

}  // namespace dequant
