#pragma once

// Ground truth for C_n mod p via Lucas' theorem, independent of the automaton.

#include <cstdint>
#include <vector>

#include "catmod/algebra.hpp"

namespace catmod {

/// Catalan index n; 2n must fit in 64 bits.
struct CatalanIndex {
  std::uint64_t n;
};

/// binom(m, k) mod p as the product of digit binomials; 0 when k > m.
Residue lucas_binomial(std::uint64_t m, std::uint64_t k, Prime p);

/// C_n mod p computed division-free as binom(2n, n) - binom(2n, n + 1).
Residue catalan_mod(CatalanIndex n, Prime p);

/// Exact C_n for n <= 35 (the range that fits an unsigned 64-bit integer
/// under the recurrence). Throws ErrorCode::overflow_range beyond.
std::uint64_t catalan_exact(std::uint64_t n);

/// catalan_mod(n, p) for n in [first, last).
std::vector<Residue> catalan_range(Prime p, std::uint64_t first, std::uint64_t last);

/// catalan_mod(n, p) for n in [0, limit).
inline std::vector<Residue> catalan_stream(Prime p, std::uint64_t limit) {
  return catalan_range(p, 0, limit);
}

}  // namespace catmod
