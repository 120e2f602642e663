#include "catmod/decomposition.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "catmod/error.hpp"
#include "catmod/oracle.hpp"

namespace catmod {

ExponentVector::ExponentVector(Prime p) : p_(p), e_(p.half() + 1, 0) {}

void ExponentVector::add(std::uint32_t d, std::uint64_t k) {
  const std::uint64_t order = p_.value() - 1;
  e_.at(d) = static_cast<std::uint32_t>((e_.at(d) + k % order) % order);
}

void ExponentVector::add(const ExponentVector& other, std::uint64_t times) {
  if (!(other.p_ == p_)) throw Error(ErrorCode::invalid_argument, "ExponentVector: mixed primes");
  const std::uint64_t order = p_.value() - 1;
  for (std::uint32_t d = 0; d < e_.size(); ++d) add(d, other.e_[d] * (times % order));
}

Residue ExponentVector::value() const {
  Residue v{1};
  for (std::uint32_t d = 0; d < e_.size(); ++d) {
    if (e_[d] != 0) v = fp_mul(v, fp_pow(central_binomial_mod(d, p_), e_[d], p_), p_);
  }
  return v;
}

std::uint64_t ExponentVector::length() const {
  std::uint64_t n = 0;
  for (std::uint32_t x : e_) n += x;
  return n;
}

Residue central_binomial_mod(std::uint32_t d, Prime p) {
  if (d > p.half()) {
    throw Error(ErrorCode::invalid_argument,
                "central_binomial_mod: d = " + std::to_string(d) + " is outside the generator set");
  }
  return lucas_binomial(2 * std::uint64_t{d}, d, p);
}

ExponentVector decompose_prime(std::uint64_t q, Prime p) {
  if (!is_prime(q) || q + 2 > p.value()) {
    throw Error(ErrorCode::invalid_argument,
                "decompose_prime: q = " + std::to_string(q) + " must be a prime <= p - 2");
  }

  static std::shared_mutex mutex;
  static std::map<std::pair<std::uint64_t, std::uint32_t>, ExponentVector> memo;
  const auto key = std::make_pair(q, p.value());
  {
    std::shared_lock lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }

  ExponentVector result(p);
  if (q == 2) {
    result.add(1, 1);  // 2 = binom(2, 1)
  } else {
    // binom(q+1, h) = q * r with every prime factor of r below q; factor it
    // prime by prime through Kummer valuations rather than materializing it.
    const std::uint64_t m = q + 1;
    const std::uint64_t h = m / 2;
    ExponentVector cofactor(p);
    for (std::uint64_t ell = 2; ell < q; ++ell) {
      if (!is_prime(ell)) continue;
      const std::uint32_t v = binomial_valuation(ell, m, h);
      if (v > 0) cofactor.add(decompose_prime(ell, p), v);
    }
    if (binomial_valuation(q, m, h) != 1) {
      throw Error(ErrorCode::property_violation, "q-adic valuation of binom(q+1, (q+1)/2) is not 1");
    }
    result.add(cofactor, p.value() - 2);  // r^(p-2) = r^-1
    result.add(static_cast<std::uint32_t>(h), 1);
  }

  std::unique_lock lock(mutex);
  memo.emplace(key, result);
  return result;
}

ExponentVector decompose_residue(Residue r, Prime p) {
  if (r.value == 0) {
    throw Error(ErrorCode::invalid_argument, "zero has no product representation");
  }
  if (r.value >= p.value()) throw Error(ErrorCode::invalid_argument, "decompose_residue: r >= p");
  ExponentVector result(p);
  // p - 1 is even and at least 4, so every prime factor of r is at most p - 2.
  for (const PrimePower& f : factorize(r.value)) result.add(decompose_prime(f.prime, p), f.exponent);
  return result;
}

bool verify_decomposition(const ExponentVector& e, Residue r, Prime p) {
  if (!(e.prime() == p)) return false;
  Residue product{1};
  for (std::uint32_t d = 0; d < e.size(); ++d) {
    product = fp_mul(product, fp_pow(central_binomial_mod(d, p), e[d], p), p);
  }
  return product == fp_reduce(r.value, p);
}

std::vector<std::uint32_t> flatten(const ExponentVector& e) {
  std::vector<std::uint32_t> out;
  out.reserve(e.length());
  for (std::uint32_t d = 0; d < e.size(); ++d) out.insert(out.end(), e[d], d);
  return out;
}

}  // namespace catmod
