// Test-side reference implementations. Deliberately naive and independent of
// the library's algorithms: dense matrices, brute-force enumeration, 2x2
// minors instead of pivoted elimination.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <vector>

#include "dequant/oracle.hpp"
#include "dequant/qstate.hpp"

namespace testing_support {

using dequant::BooleanFunction;
using dequant::Complex;
using dequant::Matrix2;
using dequant::Qubit;
using dequant::StateVector;

inline Complex gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

inline Qubit random_qubit(std::mt19937_64& rng, double min_mag = 0.0) {
  for (;;) {
    Complex a = gaussian_complex(rng);
    Complex b = gaussian_complex(rng);
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    if (std::abs(a) >= min_mag && std::abs(b) >= min_mag) return {a, b};
  }
}

inline std::vector<Complex> kron(const std::vector<Qubit>& qs) {
  std::vector<Complex> v{1.0};
  for (const auto& q : qs) {
    std::vector<Complex> next;
    for (const auto& a : v) {
      next.push_back(a * q[0]);
      next.push_back(a * q[1]);
    }
    v = next;
  }
  return v;
}

inline StateVector random_state(std::mt19937_64& rng, unsigned n) {
  std::vector<Complex> v(std::size_t{1} << n);
  for (auto& a : v) a = gaussian_complex(rng);
  return StateVector::normalized(v);
}

inline StateVector random_product_state(std::mt19937_64& rng, unsigned n, double min_mag = 0.0) {
  std::vector<Qubit> qs;
  for (unsigned i = 0; i < n; ++i) qs.push_back(random_qubit(rng, min_mag));
  return StateVector::normalized(kron(qs));
}

// Dense 2^n x 2^n Walsh-Hadamard: H[x][y] = (-1)^{popcount(x & y)} / 2^{n/2}.
inline std::vector<Complex> dense_hadamard(const std::vector<Complex>& v) {
  const std::size_t d = v.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> out(d);
  for (std::size_t x = 0; x < d; ++x) {
    Complex acc = 0.0;
    for (std::size_t y = 0; y < d; ++y) acc += (__builtin_popcountll(x & y) % 2 ? -1.0 : 1.0) * v[y];
    out[x] = acc * scale;
  }
  return out;
}

// Dense application of a single-qubit gate on `qubit` (big-endian).
inline std::vector<Complex> dense_local(const std::vector<Complex>& v, unsigned n, unsigned qubit,
                                        const Matrix2& m) {
  const std::size_t d = v.size();
  const std::size_t bit = std::size_t{1} << (n - 1 - qubit);
  std::vector<Complex> out(d);
  for (std::size_t row = 0; row < d; ++row) {
    for (std::size_t col = 0; col < d; ++col) {
      if ((row & ~bit) != (col & ~bit)) continue;
      out[row] += m[(row & bit) ? 1 : 0][(col & bit) ? 1 : 0] * v[col];
    }
  }
  return out;
}

// Every function x -> a.x xor c, as truth tables.
inline std::set<std::vector<std::uint8_t>> affine_functions(unsigned n) {
  std::set<std::vector<std::uint8_t>> out;
  const std::size_t len = std::size_t{1} << n;
  for (std::size_t a = 0; a < len; ++a) {
    for (std::uint8_t c = 0; c < 2; ++c) {
      std::vector<std::uint8_t> t(len);
      for (std::size_t x = 0; x < len; ++x) t[x] = static_cast<std::uint8_t>((__builtin_popcountll(a & x) % 2) ^ c);
      out.insert(t);
    }
  }
  return out;
}

// Separable across (subset, rest) iff every 2x2 minor of the reshaped
// coefficient matrix vanishes.
inline bool minors_vanish(const StateVector& s, const std::vector<unsigned>& subset, double tol = 1e-9) {
  const unsigned n = s.num_qubits();
  std::vector<bool> in(n, false);
  for (unsigned q : subset) in[q] = true;
  const std::size_t rows = std::size_t{1} << subset.size();
  const std::size_t cols = std::size_t{1} << (n - subset.size());
  std::vector<std::vector<Complex>> m(rows, std::vector<Complex>(cols));
  for (std::size_t idx = 0; idx < s.dimension(); ++idx) {
    std::size_t r = 0, c = 0;
    for (unsigned q = 0; q < n; ++q) {
      const unsigned b = (idx >> (n - 1 - q)) & 1u;
      if (in[q]) r = (r << 1) | b; else c = (c << 1) | b;
    }
    m[r][c] = s.amplitude(idx);
  }
  for (std::size_t r1 = 0; r1 < rows; ++r1)
    for (std::size_t r2 = r1 + 1; r2 < rows; ++r2)
      for (std::size_t c1 = 0; c1 < cols; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < cols; ++c2)
          if (std::abs(m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) > tol) return false;
  return true;
}

inline bool fully_separable_by_minors(const StateVector& s) {
  for (unsigned q = 0; q < s.num_qubits(); ++q) {
    if (!minors_vanish(s, {q})) return false;
  }
  return true;
}

inline double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::vector<BooleanFunction> all_functions(unsigned n) {
  std::vector<BooleanFunction> out;
  const std::uint64_t tables = std::uint64_t{1} << (std::uint64_t{1} << n);
  for (std::uint64_t bits = 0; bits < tables; ++bits) out.push_back(BooleanFunction::from_bits(n, bits));
  return out;
}

}  // namespace testing_support
