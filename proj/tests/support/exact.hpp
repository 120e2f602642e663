#pragma once

// Test-only oracles. Nothing here calls into the library, so tests can check
// library results against them.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace catmod::testing {

using u128 = unsigned __int128;

/// Exact binomials binom(m, k) for m <= 120 from Pascal's triangle in 128 bits.
inline const std::vector<std::vector<u128>>& pascal() {
  static const std::vector<std::vector<u128>> rows = [] {
    std::vector<std::vector<u128>> t(121);
    for (std::size_t m = 0; m < t.size(); ++m) {
      t[m].assign(m + 1, 1);
      for (std::size_t k = 1; k < m; ++k) t[m][k] = t[m - 1][k - 1] + t[m - 1][k];
    }
    return t;
  }();
  return rows;
}

inline u128 exact_binomial(std::uint64_t m, std::uint64_t k) {
  if (m > 120) throw std::out_of_range("exact_binomial: m > 120");
  return k > m ? 0 : pascal()[m][k];
}

/// Exact C_n = binom(2n, n) / (n + 1) for n <= 60.
inline u128 exact_catalan(std::uint64_t n) { return exact_binomial(2 * n, n) / (n + 1); }

/// C_0..C_{count-1} mod p from the convolution C_{n+1} = sum C_i C_{n-i}.
inline std::vector<std::uint32_t> convolution_catalan(std::uint32_t p, std::size_t count) {
  std::vector<std::uint32_t> c(count, 0);
  if (count == 0) return c;
  c[0] = 1 % p;
  for (std::size_t n = 0; n + 1 < count; ++n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i <= n; ++i) s = (s + std::uint64_t{c[i]} * c[n - i]) % p;
    c[n + 1] = static_cast<std::uint32_t>(s);
  }
  return c;
}

inline std::uint32_t mod(u128 v, std::uint32_t p) { return static_cast<std::uint32_t>(v % p); }

inline bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = lo; q <= hi; ++q) {
    if (trial_prime(q)) out.push_back(q);
  }
  return out;
}

}  // namespace catmod::testing
