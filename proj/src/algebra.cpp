#include "catmod/algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "catmod/error.hpp"

namespace catmod {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return result;
}

void trim(std::vector<std::uint32_t>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

Prime::Prime(std::uint64_t p) : p_(0) {
  if (p < 5 || p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw Error(ErrorCode::not_prime,
                "p = " + std::to_string(p) + " is not a prime in [5, 2^31)");
  }
  p_ = static_cast<std::uint32_t>(p);
}

Residue fp_reduce(std::int64_t v, Prime p) {
  const std::int64_t m = p.value();
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return Residue{static_cast<std::uint32_t>(r)};
}

Residue fp_add(Residue a, Residue b, Prime p) {
  const std::uint64_t s = std::uint64_t{a.value} + b.value;
  return Residue{static_cast<std::uint32_t>(s % p.value())};
}

Residue fp_sub(Residue a, Residue b, Prime p) {
  const std::uint64_t s = std::uint64_t{a.value} + p.value() - b.value;
  return Residue{static_cast<std::uint32_t>(s % p.value())};
}

Residue fp_mul(Residue a, Residue b, Prime p) {
  return Residue{static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p.value())};
}

Residue fp_pow(Residue base, std::uint64_t exp, Prime p) {
  return Residue{static_cast<std::uint32_t>(powmod64(base.value, exp, p.value()))};
}

Residue fp_inverse(Residue a, Prime p) {
  if (a.value % p.value() == 0) {
    throw Error(ErrorCode::non_invertible, "non-invertible: 0 has no inverse mod p");
  }
  return fp_pow(a, p.value() - 2, p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kWitnesses) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "factorize: n must be positive");
  Factorization out;
  for (std::uint64_t q = 2; q <= n / q; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    std::uint32_t e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.push_back({q, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint32_t binomial_valuation(std::uint64_t q, std::uint64_t m, std::uint64_t k) {
  if (k > m) throw Error(ErrorCode::invalid_argument, "binomial_valuation: k > m");
  if (!is_prime(q)) throw Error(ErrorCode::not_prime, "binomial_valuation: q must be prime");
  std::uint64_t lhs = k;
  std::uint64_t rhs = m - k;
  std::uint64_t carry = 0;
  std::uint32_t carries = 0;
  while (lhs > 0 || rhs > 0 || carry > 0) {
    const std::uint64_t column = lhs % q + rhs % q + carry;
    carry = column >= q ? 1 : 0;
    carries += static_cast<std::uint32_t>(carry);
    lhs /= q;
    rhs /= q;
  }
  return carries;
}

std::vector<std::uint32_t> to_digits(std::uint64_t n, std::uint32_t base) {
  std::vector<std::uint32_t> digits;
  do {
    digits.push_back(static_cast<std::uint32_t>(n % base));
    n /= base;
  } while (n > 0);
  return digits;
}

std::optional<std::uint64_t> from_digits(std::span<const std::uint32_t> digits,
                                         std::uint32_t base) {
  u128 value = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    value = value * base + *it;
    if (value > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(value);
}

// ---------------------------------------------------------------------------
// FpPolynomial

FpPolynomial::FpPolynomial(std::vector<std::uint32_t> reduced_coeffs)
    : coeffs_(std::move(reduced_coeffs)) {
  trim(coeffs_);
}

FpPolynomial FpPolynomial::from_integers(std::initializer_list<std::int64_t> coeffs, Prime p) {
  std::vector<std::uint32_t> c;
  c.reserve(coeffs.size());
  for (std::int64_t v : coeffs) c.push_back(fp_reduce(v, p).value);
  return FpPolynomial(std::move(c));
}

FpPolynomial FpPolynomial::constant(Residue c) { return FpPolynomial({c.value}); }

std::size_t hash_value(const FpPolynomial& f) noexcept {
  std::size_t h = f.size();
  for (std::uint32_t c : f.coefficients()) {
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

FpPolynomial poly_add(const FpPolynomial& f, const FpPolynomial& g, Prime p) {
  std::vector<std::uint32_t> c(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = fp_add(f.coefficient(i), g.coefficient(i), p).value;
  }
  return FpPolynomial(std::move(c));
}

FpPolynomial poly_mul(const FpPolynomial& f, const FpPolynomial& g, Prime p) {
  if (f.is_zero() || g.is_zero()) return {};
  const std::uint64_t m = p.value();
  const auto fc = f.coefficients();
  const auto gc = g.coefficients();
  // Accumulate unreduced; reduce before the sum can overflow.
  std::vector<std::uint64_t> acc(fc.size() + gc.size() - 1, 0);
  const std::uint64_t limit = UINT64_MAX - (m - 1) * (m - 1);
  for (std::size_t i = 0; i < fc.size(); ++i) {
    if (fc[i] == 0) continue;
    for (std::size_t j = 0; j < gc.size(); ++j) {
      std::uint64_t& slot = acc[i + j];
      slot += std::uint64_t{fc[i]} * gc[j];
      if (slot > limit) slot %= m;
    }
  }
  std::vector<std::uint32_t> c(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<std::uint32_t>(acc[i] % m);
  return FpPolynomial(std::move(c));
}

FpPolynomial poly_scale(const FpPolynomial& f, Residue c, Prime p) {
  std::vector<std::uint32_t> out(f.coefficients().begin(), f.coefficients().end());
  for (auto& v : out) v = fp_mul(Residue{v}, c, p).value;
  return FpPolynomial(std::move(out));
}

FpPolynomial poly_shift(const FpPolynomial& f, std::size_t k) {
  if (f.is_zero()) return {};
  std::vector<std::uint32_t> c(k, 0);
  c.insert(c.end(), f.coefficients().begin(), f.coefficients().end());
  return FpPolynomial(std::move(c));
}

FpPolynomial poly_cartier(std::uint32_t r, const FpPolynomial& f, Prime p) {
  if (r >= p.value()) throw Error(ErrorCode::invalid_argument, "poly_cartier: digit out of range");
  std::vector<std::uint32_t> c;
  const auto fc = f.coefficients();
  for (std::size_t j = r; j < fc.size(); j += p.value()) c.push_back(fc[j]);
  return FpPolynomial(std::move(c));
}

const FpPolynomial& poly_d_power(std::uint64_t k, Prime p) {
  static std::shared_mutex mutex;
  static std::map<std::pair<std::uint64_t, std::uint32_t>, FpPolynomial> memo;
  const auto key = std::make_pair(k, p.value());
  {
    std::shared_lock lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  // (1 - 4x)^k = sum_j binom(k, j) (-4)^j x^j; for k >= p split off the
  // Frobenius part (1 - 4x)^(p q) = (1 - 4x)^q evaluated at x^p, since 4^p = 4.
  FpPolynomial result;
  if (k < p.value()) {
    std::vector<std::uint32_t> c(k + 1);
    const Residue minus_four = fp_reduce(-4, p);
    Residue binom{1};
    Residue power{1};
    for (std::uint64_t j = 0; j <= k; ++j) {
      c[j] = fp_mul(binom, power, p).value;
      if (j < k) {
        binom = fp_mul(binom, fp_reduce(static_cast<std::int64_t>(k - j), p), p);
        binom = fp_mul(binom, fp_inverse(fp_reduce(static_cast<std::int64_t>(j + 1), p), p), p);
        power = fp_mul(power, minus_four, p);
      }
    }
    result = FpPolynomial(std::move(c));
  } else {
    const FpPolynomial& low = poly_d_power(k % p.value(), p);
    const FpPolynomial& high = poly_d_power(k / p.value(), p);
    std::vector<std::uint32_t> spread((high.size() - 1) * p.value() + 1, 0);
    for (std::size_t j = 0; j < high.size(); ++j) spread[j * p.value()] = high.coefficient(j).value;
    result = poly_mul(FpPolynomial(std::move(spread)), low, p);
  }
  std::unique_lock lock(mutex);
  auto [it, inserted] = memo.emplace(key, std::move(result));
  return it->second;
}

std::optional<FpPolynomial> poly_divide_by_x(const FpPolynomial& f) {
  if (f.is_zero()) return FpPolynomial{};
  if (f.coefficient(0).value != 0) return std::nullopt;
  std::vector<std::uint32_t> c(f.coefficients().begin() + 1, f.coefficients().end());
  return FpPolynomial(std::move(c));
}

std::optional<FpPolynomial> poly_divide_by_d(const FpPolynomial& f, Prime p) {
  if (f.is_zero()) return FpPolynomial{};
  // f = (1 - 4x) q  =>  q_i = f_i + 4 q_{i-1}, and the top coefficient must cancel.
  const auto fc = f.coefficients();
  std::vector<std::uint32_t> q(fc.size() - 1);
  Residue prev{0};
  for (std::size_t i = 0; i + 1 < fc.size(); ++i) {
    prev = fp_add(Residue{fc[i]}, fp_mul(Residue{4}, prev, p), p);
    q[i] = prev.value;
  }
  if (fp_add(Residue{fc.back()}, fp_mul(Residue{4}, prev, p), p).value != 0) return std::nullopt;
  return FpPolynomial(std::move(q));
}

}  // namespace catmod
