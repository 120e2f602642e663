#include "catmod/oracle.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

#include "catmod/error.hpp"

namespace catmod {

namespace {

// Factorials and inverse factorials below p, shared per prime.
struct DigitBinomials {
  std::vector<std::uint32_t> fact;
  std::vector<std::uint32_t> inv_fact;

  explicit DigitBinomials(Prime p) : fact(p.value()), inv_fact(p.value()) {
    fact[0] = 1;
    for (std::uint32_t i = 1; i < p.value(); ++i) {
      fact[i] = fp_mul(Residue{fact[i - 1]}, Residue{i}, p).value;
    }
    inv_fact[p.value() - 1] = fp_inverse(Residue{fact[p.value() - 1]}, p).value;
    for (std::uint32_t i = p.value() - 1; i > 0; --i) {
      inv_fact[i - 1] = fp_mul(Residue{inv_fact[i]}, Residue{i}, p).value;
    }
  }
};

const DigitBinomials& digit_binomials(Prime p) {
  static std::shared_mutex mutex;
  static std::map<std::uint32_t, std::unique_ptr<DigitBinomials>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(p.value()); it != cache.end()) return *it->second;
  }
  auto table = std::make_unique<DigitBinomials>(p);
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(p.value(), std::move(table));
  return *it->second;
}

Residue lucas_with(const DigitBinomials& t, std::uint64_t m, std::uint64_t k, Prime p) {
  if (k > m) return Residue{0};
  const std::uint64_t base = p.value();
  std::uint64_t result = 1;
  while (k > 0) {
    const std::uint64_t mi = m % base;
    const std::uint64_t ki = k % base;
    if (ki > mi) return Residue{0};
    result = result * t.fact[mi] % base * t.inv_fact[ki] % base * t.inv_fact[mi - ki] % base;
    m /= base;
    k /= base;
  }
  return Residue{static_cast<std::uint32_t>(result)};
}

Residue catalan_with(const DigitBinomials& t, std::uint64_t n, Prime p) {
  if (n >= (std::uint64_t{1} << 63)) {
    throw Error(ErrorCode::overflow_range, "catalan index must satisfy n < 2^63");
  }
  const std::uint64_t m = 2 * n;
  return fp_sub(lucas_with(t, m, n, p), lucas_with(t, m, n + 1, p), p);
}

}  // namespace

Residue lucas_binomial(std::uint64_t m, std::uint64_t k, Prime p) {
  return lucas_with(digit_binomials(p), m, k, p);
}

Residue catalan_mod(CatalanIndex n, Prime p) { return catalan_with(digit_binomials(p), n.n, p); }

std::uint64_t catalan_exact(std::uint64_t n) {
  if (n > 35) throw Error(ErrorCode::overflow_range, "catalan_exact: n > 35 is outside the overflow range");
  unsigned __int128 c = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    c = c * (2 * (2 * k + 1)) / (k + 2);
  }
  return static_cast<std::uint64_t>(c);
}

std::vector<Residue> catalan_range(Prime p, std::uint64_t first, std::uint64_t last) {
  std::vector<Residue> out;
  if (last <= first) return out;
  const DigitBinomials& t = digit_binomials(p);
  out.reserve(last - first);
  for (std::uint64_t n = first; n < last; ++n) out.push_back(catalan_with(t, n, p));
  return out;
}

}  // namespace catmod
