#pragma once

// Residues as products of central binomial coefficients binom(2d, d) mod p,
// d <= (p-1)/2, built by induction over the primes below p - 1.

#include <cstdint>
#include <vector>

#include "catmod/algebra.hpp"

namespace catmod {

/// e[d] is the exponent of binom(2d, d) for d = 0..(p-1)/2; exponents are
/// kept reduced mod p - 1.
class ExponentVector {
 public:
  explicit ExponentVector(Prime p);

  Prime prime() const noexcept { return p_; }
  std::size_t size() const noexcept { return e_.size(); }
  std::uint32_t operator[](std::uint32_t d) const { return e_.at(d); }
  const std::vector<std::uint32_t>& exponents() const noexcept { return e_; }

  /// e[d] += k, reduced mod p - 1.
  void add(std::uint32_t d, std::uint64_t k);
  void add(const ExponentVector& other, std::uint64_t times = 1);

  /// Product of binom(2d, d)^e[d] mod p.
  Residue value() const;
  /// Sum of exponents, i.e. the length of flatten().
  std::uint64_t length() const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  Prime p_;
  std::vector<std::uint32_t> e_;
};

/// binom(2d, d) mod p; d > (p-1)/2 throws ErrorCode::invalid_argument.
Residue central_binomial_mod(std::uint32_t d, Prime p);

/// q = binom(q+1, (q+1)/2) * r^(p-2), r the cofactor of binom(q+1, (q+1)/2)
/// whose prime factors are all below q. Memoized per (q, p). Requires q prime
/// and q <= p - 2.
ExponentVector decompose_prime(std::uint64_t q, Prime p);

/// Sums the prime decompositions of the factors of r; r = 0 throws.
ExponentVector decompose_residue(Residue r, Prime p);

bool verify_decomposition(const ExponentVector& e, Residue r, Prime p);

/// d repeated e[d] times, ascending.
std::vector<std::uint32_t> flatten(const ExponentVector& e);

}  // namespace catmod
