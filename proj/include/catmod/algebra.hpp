#pragma once

// Arithmetic over Z/pZ, dense univariate polynomials over Z/pZ, and the small
// integer utilities (primality, factorization, Kummer valuations) the rest of
// the library builds on.
//
// Digit convention: every digit string in this library is least-significant
// digit first, and n = 0 is the one-digit string [0].

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace catmod {

/// An odd prime p >= 5 below 2^31. Construction validates.
class Prime {
 public:
  explicit Prime(std::uint64_t p);

  constexpr std::uint32_t value() const noexcept { return p_; }
  /// (p - 1) / 2, the largest d with binom(2d, d) a unit.
  constexpr std::uint32_t half() const noexcept { return (p_ - 1) / 2; }

  friend constexpr bool operator==(Prime, Prime) = default;

 private:
  std::uint32_t p_;
};

struct Residue {
  std::uint32_t value = 0;

  friend constexpr bool operator==(Residue, Residue) = default;
  friend constexpr auto operator<=>(Residue, Residue) = default;
};

Residue fp_reduce(std::int64_t v, Prime p);
Residue fp_add(Residue a, Residue b, Prime p);
Residue fp_sub(Residue a, Residue b, Prime p);
Residue fp_mul(Residue a, Residue b, Prime p);
/// base^exp mod p by square-and-multiply. 0^0 is 1.
Residue fp_pow(Residue base, std::uint64_t exp, Prime p);
/// a^(p-2); throws ErrorCode::non_invertible for a = 0.
Residue fp_inverse(Residue a, Prime p);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

/// Trial division; primes strictly increasing, factorize(1) is empty.
Factorization factorize(std::uint64_t n);

/// Exponent of the prime q in binom(m, k), counted as the number of carries
/// when adding k and m - k in base q.
std::uint32_t binomial_valuation(std::uint64_t q, std::uint64_t m, std::uint64_t k);

/// Base-`base` digits of n, least significant first; n = 0 gives {0}.
std::vector<std::uint32_t> to_digits(std::uint64_t n, std::uint32_t base);
/// Inverse of to_digits; nullopt when the value does not fit in 64 bits.
std::optional<std::uint64_t> from_digits(std::span<const std::uint32_t> digits,
                                         std::uint32_t base);

/// Dense polynomial over Z/pZ, index i holding the coefficient of x^i.
/// Always normalized: no trailing zero coefficients, the zero polynomial is
/// empty. The prime is not stored; operations take it explicitly.
class FpPolynomial {
 public:
  FpPolynomial() = default;
  explicit FpPolynomial(std::vector<std::uint32_t> reduced_coeffs);

  static FpPolynomial from_integers(std::initializer_list<std::int64_t> coeffs, Prime p);
  static FpPolynomial constant(Residue c);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
  std::size_t size() const noexcept { return coeffs_.size(); }
  Residue coefficient(std::size_t i) const noexcept {
    return Residue{i < coeffs_.size() ? coeffs_[i] : 0u};
  }
  std::span<const std::uint32_t> coefficients() const noexcept { return coeffs_; }

  friend bool operator==(const FpPolynomial&, const FpPolynomial&) = default;

 private:
  std::vector<std::uint32_t> coeffs_;
};

std::size_t hash_value(const FpPolynomial& f) noexcept;

FpPolynomial poly_add(const FpPolynomial& f, const FpPolynomial& g, Prime p);
FpPolynomial poly_mul(const FpPolynomial& f, const FpPolynomial& g, Prime p);
FpPolynomial poly_scale(const FpPolynomial& f, Residue c, Prime p);
/// f * x^k.
FpPolynomial poly_shift(const FpPolynomial& f, std::size_t k);
/// Cartier operator: coefficient i of the result is coefficient p*i + r of f.
FpPolynomial poly_cartier(std::uint32_t r, const FpPolynomial& f, Prime p);
/// (1 - 4x)^k, memoized per (k, p). Safe to call from several threads.
const FpPolynomial& poly_d_power(std::uint64_t k, Prime p);
/// f / x when x divides f.
std::optional<FpPolynomial> poly_divide_by_x(const FpPolynomial& f);
/// f / (1 - 4x) when the division is exact.
std::optional<FpPolynomial> poly_divide_by_d(const FpPolynomial& f, Prime p);

}  // namespace catmod
