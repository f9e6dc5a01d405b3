#include "dequant/census.hpp"

#include <algorithm>
#include <thread>

#include "dequant/error.hpp"
#include "dequant/separability.hpp"

namespace dequant {

std::string_view to_string(CensusMethod m) {
  return m == CensusMethod::Formula ? "formula" : "brute-force";
}

mpz_class count_valid(unsigned n) {
  if (n == 0) throw InvalidArgument("arity must be at least 1");
  if (n > 30) throw InvalidArgument("count_valid: n > 30 is impractical (binomial of 2^n)");
  mpz_class b;
  const unsigned long big = 1ul << n;
  mpz_bin_uiui(b.get_mpz_t(), big, big / 2);
  return b + 2;
}

mpz_class count_separable(unsigned n) {
  if (n == 0) throw InvalidArgument("arity must be at least 1");
  mpz_class a;
  mpz_ui_pow_ui(a.get_mpz_t(), 2, n + 1);
  return a;
}

mpq_class separable_fraction(unsigned n) {
  mpq_class q(count_separable(n), count_valid(n));
  q.canonicalize();
  return q;
}

CensusReport formula_census(unsigned n, bool with_set) {
  CensusReport r{n, count_separable(n), count_valid(n), separable_fraction(n), CensusMethod::Formula,
                 std::nullopt};
  if (with_set) {
    if (n > 16) throw InvalidArgument("separable set listing is limited to n <= 16");
    r.separable_set = enumerate_separable_functions(n);
  }
  return r;
}

namespace {

void extend(const std::vector<std::uint8_t>& parent, unsigned n, unsigned target,
            const std::function<void(const BooleanFunction&)>& emit) {
  if (n == target) {
    emit(BooleanFunction(n, parent));
    return;
  }
  // Top level K = 2N: alpha_j alpha_{2N-1-j} constant, so in bits
  // f(N + j) = f(N - 1 - j) xor f(N - 1) xor f(N).
  const std::size_t N = parent.size();
  for (std::uint8_t free_bit = 0; free_bit <= 1; ++free_bit) {
    std::vector<std::uint8_t> child(2 * N);
    std::copy(parent.begin(), parent.end(), child.begin());
    const std::uint8_t parity = parent[N - 1] ^ free_bit;
    for (std::size_t j = 0; j < N; ++j) child[N + j] = parent[N - 1 - j] ^ parity;
    extend(child, n + 1, target, emit);
  }
}

}  // namespace

void for_each_separable_function(unsigned n,
                                 const std::function<void(const BooleanFunction&)>& emit) {
  if (n == 0) throw InvalidArgument("arity must be at least 1");
  if (n > 20) throw InvalidArgument("separable enumeration is limited to n <= 20");
  // Arity 1: the two constants, then the two balanced functions.
  static const std::uint8_t base[4][2] = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  for (const auto& b : base) extend({b[0], b[1]}, 1, n, emit);
}

std::vector<BooleanFunction> enumerate_separable_functions(unsigned n) {
  std::vector<BooleanFunction> out;
  for_each_separable_function(n, [&](const BooleanFunction& f) { out.push_back(f); });
  return out;
}

CensusReport brute_force_census(unsigned n, unsigned threads) {
  if (n == 0) throw InvalidArgument("arity must be at least 1");
  if (n > 4) {
    throw InvalidArgument("brute-force census is limited to n <= 4 (2^(2^n) tables); "
                          "use the closed-form counts for larger n");
  }
  const std::size_t len = std::size_t{1} << n;
  const std::uint64_t total = std::uint64_t{1} << len;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

  struct Tally {
    std::uint64_t valid = 0;
    std::vector<std::uint64_t> separable;
  };
  std::vector<Tally> tallies(threads);
  auto scan = [&](unsigned t) {
    const std::uint64_t lo = total * t / threads;
    const std::uint64_t hi = total * (t + 1) / threads;
    Tally& tally = tallies[t];
    for (std::uint64_t bits = lo; bits < hi; ++bits) {
      const auto f = BooleanFunction::from_bits(n, bits);
      if (classify(f).kind == FunctionKind::Invalid) continue;
      ++tally.valid;
      if (is_product(factor_product_state(oracle_output_state(f)))) tally.separable.push_back(bits);
    }
  };
  if (threads == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(scan, t);
    for (auto& th : pool) th.join();
  }

  std::uint64_t valid = 0;
  std::vector<BooleanFunction> set;
  for (const auto& tally : tallies) {
    valid += tally.valid;
    for (auto bits : tally.separable) set.push_back(BooleanFunction::from_bits(n, bits));
  }
  std::sort(set.begin(), set.end());
  mpz_class a(static_cast<unsigned long>(set.size()));
  mpz_class b(static_cast<unsigned long>(valid));
  mpq_class q(a, b);
  q.canonicalize();
  return CensusReport{n, a, b, q, CensusMethod::BruteForce, std::move(set)};
}

BooleanFunction proposition_witness(unsigned n) {
  if (n < 3) throw InvalidArgument("the maximally entangled witness is defined for n >= 3");
  if (n > 30) throw InvalidArgument("function arity must be in [1, 30]");
  const std::size_t len = std::size_t{1} << n;
  std::vector<std::uint8_t> table(len, 1);
  for (std::size_t a = 0; a + 1 < len / 2; ++a) table[a] = 0;
  table[len - 2] = 0;
  return BooleanFunction(n, std::move(table));
}

BooleanFunction entangled_example_n3() {
  return BooleanFunction(3, {0, 0, 0, 1, 1, 1, 1, 0});
}

}  // namespace dequant
